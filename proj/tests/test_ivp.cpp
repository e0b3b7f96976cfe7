#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "fraclab/ivp.hpp"
#include "support.hpp"

using namespace fraclab;
using testing_support::Gen;
using testing_support::max_error;
using testing_support::ml_series;

namespace {

ivp::FodeProblem relaxation(double alpha, double lambda = -1.0, double y0 = 1.0, double T = 1.0) {
    return {alpha, 0.0, T, y0, [lambda](double, double y) { return lambda * y; }};
}

}  // namespace

TEST(Adams, RelaxationAgainstSeriesOracle) {
    for (double alpha : {0.3, 0.6, 0.9}) {
        auto y = ivp::solve_adams(relaxation(alpha), {1024, 1});
        auto exact = [&](double t) { return ml_series(alpha, 1.0, -std::pow(t, alpha)); };
        EXPECT_LT(max_error(y, exact, 64), 5e-6) << alpha;
        EXPECT_LT(max_error(y, exact), 1e-3) << alpha;
    }
}

TEST(Adams, ManufacturedPowerSolution) {
    const double alpha = 0.5;
    const double c = boost::math::tgamma(3.0) / boost::math::tgamma(3.0 - alpha);
    ivp::FodeProblem p{alpha, 0.0, 1.0, 0.0, [&](double t, double) { return c * std::pow(t, 2.0 - alpha); }};
    auto y = ivp::solve_adams(p, {512, 1});
    EXPECT_LT(max_error(y, [](double t) { return t * t; }), 1e-5);
}

TEST(Adams, OrderOneIsClassicalOde) {
    auto y = ivp::solve_adams(relaxation(1.0), {256, 2});
    EXPECT_LT(max_error(y, [](double t) { return std::exp(-t); }), 1e-5);
}

TEST(Adams, ZeroRightHandSideKeepsInitialValue) {
    Gen gen(61);
    for (int i = 0; i < 20; ++i) {
        const double alpha = gen.uniform(0.1, 1.0), y0 = gen.uniform(-5, 5);
        ivp::FodeProblem p{alpha, gen.uniform(-1, 1), 1.0, y0, [](double, double) { return 0.0; }};
        auto y = ivp::solve_adams(p, {64, 1});
        for (double v : y.values) EXPECT_EQ(v, y0);
    }
}

TEST(Adams, ShiftedStartMatchesOrigin) {
    auto p = relaxation(0.7);
    auto y0 = ivp::solve_adams(p, {128, 1});
    p.a = 3.0;
    auto y3 = ivp::solve_adams(p, {128, 1});
    EXPECT_DOUBLE_EQ(y3.t0, 3.0);
    for (std::size_t i = 0; i < y0.size(); ++i) EXPECT_NEAR(y0[i], y3[i], 1e-14);
}

TEST(Adams, BlowUpIsReported) {
    ivp::FodeProblem p{0.8, 0.0, 10.0, 1.0, [](double, double y) { return y * y; }};
    EXPECT_THROW(ivp::solve_adams(p, {1000, 1}), DivergenceError);
}

TEST(Adams, Deterministic) {
    auto p = relaxation(0.45, -2.0);
    EXPECT_EQ(ivp::solve_adams(p, {300, 1}).values, ivp::solve_adams(p, {300, 1}).values);
}

TEST(Adams, PredictorWeightsAreCancellationFree) {
    Gen gen(62);
    for (int i = 0; i < 200; ++i) {
        const double a = gen.uniform(0.05, 1.0);
        const double m = std::floor(gen.uniform(1.0, 1e7));
        const long double ml = m, al = a;
        const double ref = static_cast<double>(std::pow(ml, al) - std::pow(ml - 1.0L, al));
        EXPECT_NEAR(ivp::detail::power_increment(a, m) / ref, 1.0, 1e-10) << a << " " << m;
    }
}

TEST(Diffusive, QuadratureReproducesPowerKernel) {
    for (double alpha : {0.2, 0.5, 0.8}) {
        const auto q = ivp::diffusive_quadrature(alpha, 1e-6, 1e7, 13, 8);
        EXPECT_LT(ivp::laplace_identity_error(alpha, q, {1e-3, 1e-2, 0.1, 0.5, 1.0}), 1e-6) << alpha;
    }
}

TEST(Diffusive, WeightsArePositive) {
    const auto q = ivp::diffusive_quadrature(0.4, 1e-6, 1e6, 12, 8);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        EXPECT_GT(q.weights[i], 0.0);
        EXPECT_GT(q.nodes[i], 0.0);
    }
}

TEST(Diffusive, SteppersAreAStableProperty) {
    Gen gen(63);
    for (auto s : {ivp::Stepper::backward_euler, ivp::Stepper::trapezoidal, ivp::Stepper::exponential})
        for (int i = 0; i < 500; ++i) {
            const double w = std::pow(10.0, gen.uniform(-8, 10)), h = std::pow(10.0, gen.uniform(-6, 0));
            EXPECT_LE(std::abs(ivp::amplification(s, w, h)), 1.0) << ivp::to_string(s) << " " << w << " " << h;
        }
}

TEST(Diffusive, StepperNamesRoundTrip) {
    for (auto s : {ivp::Stepper::backward_euler, ivp::Stepper::trapezoidal, ivp::Stepper::exponential})
        EXPECT_EQ(ivp::parse_stepper(ivp::to_string(s)), s);
    EXPECT_THROW(ivp::parse_stepper("rk4"), DomainError);
}

TEST(Diffusive, StatesStartAtZero) {
    auto s = ivp::diffusive_init(relaxation(0.5), {});
    for (double v : s.phi) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(s.tail_phi, 0.0);
}

TEST(Diffusive, RejectsOrderOne) {
    EXPECT_THROW(ivp::diffusive_init(relaxation(1.0), {}), DomainError);
}

TEST(Diffusive, RelaxationAgainstSeriesOracle) {
    for (auto s : {ivp::Stepper::backward_euler, ivp::Stepper::trapezoidal, ivp::Stepper::exponential}) {
        ivp::DiffusiveConfig c;
        c.N = 1024;
        c.stepper = s;
        auto y = ivp::solve_diffusive(relaxation(0.6), c);
        auto exact = [](double t) { return ml_series(0.6, 1.0, -std::pow(t, 0.6)); };
        EXPECT_LT(max_error(y, exact, 256), 5e-4) << ivp::to_string(s);
        EXPECT_LT(std::abs(y.values.back() - exact(1.0)), 2e-4) << ivp::to_string(s);
    }
}

TEST(Diffusive, ZeroRightHandSideKeepsInitialValue) {
    ivp::FodeProblem p{0.5, 0.0, 1.0, 2.5, [](double, double) { return 0.0; }};
    auto y = ivp::solve_diffusive(p, {});
    for (double v : y.values) EXPECT_NEAR(v, 2.5, 1e-14);
}

TEST(Diffusive, MemoryIsIndependentOfStepCount) {
    std::size_t first = 0;
    for (std::size_t N : {256u, 1024u, 4096u}) {
        MemoryMeter meter;
        ivp::DiffusiveConfig c;
        c.N = N;
        c.M = 120;
        ivp::solve_diffusive(relaxation(0.5), c, &meter);
        if (first == 0) first = meter.peak;
        EXPECT_EQ(meter.peak, first);
    }
}

TEST(Diffusive, Deterministic) {
    ivp::DiffusiveConfig c;
    c.N = 200;
    EXPECT_EQ(ivp::solve_diffusive(relaxation(0.3), c).values, ivp::solve_diffusive(relaxation(0.3), c).values);
}

TEST(Benchmark, LogLogSlope) {
    EXPECT_NEAR(ivp::loglog_slope({1, 2, 4, 8}, {3, 12, 48, 192}), 2.0, 1e-12);
}
