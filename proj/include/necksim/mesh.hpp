#pragma once

#include "necksim/geometry.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace necksim {

/// Checks closedness, consistent outward orientation and non-degenerate faces.
void validateMesh(const TriangleMesh& mesh);

/// Vertex adjacency (1-ring), sorted ascending.
std::vector<std::vector<int>> vertexNeighbors(const TriangleMesh& mesh);

/// Vertices within `rings` edge hops of v, excluding v, sorted ascending.
std::vector<int> kRing(const std::vector<std::vector<int>>& neighbors, int v, int rings);

/// Per-vertex geometry: principal curvatures from a least-squares quadric fit
/// over the 2-ring, barycentric area weights, and the outward normal of the
/// fitted quadric (the area-weighted face normal seeds the fit frame).
std::vector<NodeGeometry> meshGeometry(const TriangleMesh& mesh);

double meshArea(const TriangleMesh& mesh);

/// Geodesic icosphere: level 4 has 2562 vertices.
TriangleMesh makeIcosphere(double radius, int subdivisions);

/// Torus with tube radius `tubeRadius` around a circle of radius `majorRadius`
/// in the xy-plane.
TriangleMesh makeTorus(double majorRadius, double tubeRadius, int majorSegments, int tubeSegments);

TriangleMesh readOff(std::istream& in);
TriangleMesh readOffFile(const std::string& path);
void writeOff(std::ostream& out, const TriangleMesh& mesh);

FlowState makeMeshState(TriangleMesh mesh, double t = 0.0, long step = 0);

} // namespace necksim
