#include "necksim/errors.hpp"
#include "necksim/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace necksim;

TEST(Verify, CheckHelpers) {
    EXPECT_TRUE(checkNear("a", 1.0, 1.05, 0.1).pass);
    EXPECT_FALSE(checkNear("a", 1.0, 1.2, 0.1).pass);
    EXPECT_TRUE(checkAtMost("b", 1.0, 1.0).pass);
    EXPECT_FALSE(checkAtMost("b", 1.0, 1.5, 0.1).pass);
    EXPECT_TRUE(checkAtLeast("c", 0.0, -1e-13, 1e-12).pass);
    EXPECT_FALSE(checkAtLeast("c", 0.0, std::nan("")).pass);

    CriterionResult r{1, "t", {checkNear("ok", 0, 0, 0), checkNear("bad", 0, 3, 1), checkNear("worse", 0, 9, 1)}, 0};
    EXPECT_FALSE(r.pass());
    EXPECT_EQ(r.headline().name, "worse");
    EXPECT_FALSE(CriterionResult{}.pass());
}

TEST(Verify, UniformDoubleIsDeterministic) {
    std::mt19937_64 a(7), b(7);
    for (int k = 0; k < 1000; ++k) {
        const double x = uniformDouble(a, -1.0, 3.0);
        EXPECT_EQ(x, uniformDouble(b, -1.0, 3.0));
        EXPECT_GE(x, -1.0);
        EXPECT_LT(x, 3.0);
    }
    std::mt19937_64 c(11);
    for (int k = 0; k < 100; ++k) {
        const auto l = randomTwoConvex(c, 4, 0.1);
        EXPECT_GE(l[0] + l[1] - 0.2, 0.05);
    }
}

TEST(Verify, ExtremalSequenceOnTheSeparatrix) {
    // α = γ = 2, C = φ0 = 1: d = 4 and log φ(k_m) = -2 m ln 2 exactly.
    const auto seq = stampacchiaExtremalLog(2.0, 2.0, 1.0, 1.0, 4.0, 20);
    ASSERT_EQ(seq.size(), 21u);
    for (std::size_t m = 0; m < seq.size(); ++m)
        EXPECT_NEAR(seq[m], -2.0 * static_cast<double>(m) * std::numbers::ln2, 1e-9);
    // Below the level the sequence eventually climbs back above φ0.
    const auto below = stampacchiaExtremalLog(2.0, 2.0, 1.0, 1.0, 3.6, 1000);
    EXPECT_GT(below.back(), below.front());
    // Above it collapses.
    const auto above = stampacchiaExtremalLog(2.0, 2.0, 1.0, 1.0, 4.4, 5000);
    EXPECT_EQ(above.back(), -std::numeric_limits<double>::infinity());
    EXPECT_THROW(stampacchiaExtremalLog(2.0, 2.0, 1.0, 0.0, 4.0, 5), InvalidInputError);
}

TEST(Verify, ClosedProfilesAreValid) {
    EXPECT_NO_THROW(validateProfile(ellipsoidProfile(3, 1.5, 0.7, 64)));
    EXPECT_NO_THROW(validateProfile(peanutProfile(4, 0.3, 64)));
}
