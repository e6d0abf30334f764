"""Two-convex inverse-harmonic-mean curvature flow: curvature functions,
model shapes, the inscribed-radius field, the flow integrator, estimate
monitors and the acceptance suite."""

from ._necksim import (
    ConfigError,
    CurvatureFitError,
    DegenerateGeometryError,
    Error,
    ExtinctError,
    FlowConfig,
    FlowState,
    InvalidInputError,
    IterationDivergesError,
    Trajectory,
    TwoConvexityError,
    adaptive_dt,
    cylinder_H_ratio,
    cylinder_mu_ratio,
    exact_cylinder_radius,
    exact_sphere_radius,
    g_kappa,
    grad_g_kappa,
    icosphere_state,
    level_function,
    mesh_state_from_off,
    model_state,
    monitors,
    mu,
    profile_state,
    run,
    run_acceptance,
    sphere_mu_ratio,
    stampacchia_vanishing_level,
    step,
    two_convexity_margin,
)

__all__ = [name for name in dir() if not name.startswith("_")]
