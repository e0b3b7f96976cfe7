#include <gtest/gtest.h>

#include <cmath>

#include "fraclab/tvp.hpp"
#include "support.hpp"

using namespace fraclab;
using testing_support::Gen;
using testing_support::ml_series;

namespace {

tvp::TvpProblem relaxation_tvp(double alpha, double ystar, double b = 1.0) {
    return {alpha, 0.0, b, b, ystar, [](double, double y) { return -y; }};
}

}  // namespace

TEST(GreenKernel, PiecewiseDefinition) {
    const double alpha = 0.6, b = 2.0;
    EXPECT_NEAR(tvp::green_kernel(1.5, 0.5, b, alpha), std::pow(1.0, -0.4) - std::pow(1.5, -0.4), 1e-15);
    EXPECT_NEAR(tvp::green_kernel(0.5, 1.5, b, alpha), -std::pow(0.5, -0.4), 1e-15);
}

TEST(GreenKernel, VanishesAtTerminalTimeProperty) {
    Gen gen(81);
    for (int i = 0; i < 200; ++i) {
        const double alpha = gen.uniform(0.1, 0.99), b = gen.uniform(0.5, 3.0), s = gen.uniform(0.0, 0.99 * b);
        EXPECT_NEAR(tvp::green_kernel(b, s, b, alpha), 0.0, 1e-12);
    }
}

TEST(GreenKernel, OrderOne) {
    EXPECT_EQ(tvp::green_kernel(0.7, 0.2, 1.0, 1.0), 0.0);
    EXPECT_EQ(tvp::green_kernel(0.2, 0.7, 1.0, 1.0), -1.0);
}

TEST(GreenKernel, SingularPointsAreRejected) {
    for (auto [t, s] : {std::pair{0.5, 0.5}, std::pair{0.3, 1.0}}) {
        try {
            tvp::green_kernel(t, s, 1.0, 0.5);
            FAIL();
        } catch (const DomainError& e) {
            EXPECT_EQ(e.code(), "singular_point");
        }
    }
}

TEST(Shooting, RoundTripThroughForwardSolve) {
    Gen gen(82);
    for (int i = 0; i < 4; ++i) {
        const double alpha = gen.uniform(0.3, 0.95), ya = gen.uniform(-2, 2);
        tvp::TvpProblem p{alpha, 0.0, 1.0, 1.0, 0.0, [](double t, double y) { return std::sin(t) - 0.5 * y; }};
        const auto forward = ivp::solve_adams({alpha, 0.0, 1.0, ya, p.rhs}, {256, 1});
        p.ystar = forward.values.back();
        const auto r = tvp::solve_shooting(p, {}, {256, 1});
        EXPECT_TRUE(r.converged);
        EXPECT_NEAR(r.y_a, ya, 1e-8) << alpha;
        EXPECT_LE(r.solves, 6);
    }
}

TEST(Shooting, RelaxationAgainstSeriesOracle) {
    const double alpha = 0.7, ystar = 0.5;
    const auto r = tvp::solve_shooting(relaxation_tvp(alpha, ystar), {}, {1024, 1});
    EXPECT_NEAR(r.y_a, ystar / ml_series(alpha, 1.0, -1.0), 1e-5);
    EXPECT_NEAR(r.trajectory.values.back(), ystar, 1e-10);
}

TEST(Shooting, ExtendedHorizonMustAlignWithGrid) {
    auto p = relaxation_tvp(0.5, 1.0);
    p.T = 1.5;
    const auto r = tvp::solve_shooting(p, {}, {64, 1});
    EXPECT_EQ(r.trajectory.size(), 97u);
    p.T = 1.0 + 1.0 / 200;
    EXPECT_THROW(tvp::solve_shooting(p, {}, {64, 1}), ConfigError);
}

TEST(Shooting, ConfigValidation) {
    EXPECT_THROW(tvp::solve_shooting(relaxation_tvp(0.5, 1.0), {1.0, 1.0, 30, 1e-10}, {64, 1}), ConfigError);
    auto p = relaxation_tvp(0.5, 1.0);
    p.T = 0.5;
    EXPECT_THROW(tvp::solve_shooting(p, {}, {64, 1}), DomainError);
}

TEST(Fredholm, RelaxationAgainstSeriesOracle) {
    const double alpha = 0.6, ystar = 0.8;
    const auto r = tvp::solve_fredholm_collocation(relaxation_tvp(alpha, ystar), 512);
    EXPECT_LT(r.residual, 1e-9);
    EXPECT_NEAR(r.y.values.front(), ystar / ml_series(alpha, 1.0, -1.0), 1e-4);
    EXPECT_NEAR(r.y.values.back(), ystar, 1e-12);
}

TEST(Fredholm, AgreesWithShooting) {
    tvp::TvpProblem p{0.8, 0.0, 1.0, 1.0, 1.2, [](double t, double y) { return t - 0.3 * y * y; }};
    const auto s = tvp::solve_shooting(p, {}, {512, 1});
    const auto f = tvp::solve_fredholm_collocation(p, 512);
    EXPECT_NEAR(s.y_a, f.y.values.front(), 1e-5);
}
