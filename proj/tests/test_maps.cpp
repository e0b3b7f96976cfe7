#include <gtest/gtest.h>

#include <cmath>

#include "fraclab/ivp.hpp"
#include "fraclab/maps.hpp"
#include "support.hpp"

using namespace fraclab;
using testing_support::Gen;

TEST(MemoryWeights, PositiveAndDecreasingProperty) {
    Gen gen(91);
    for (int i = 0; i < 50; ++i) {
        const double alpha = gen.uniform(0.05, 0.999);
        double prev = maps::memory_weight(alpha, 1);
        for (std::size_t m = 2; m < 2000; m += 7) {
            const double c = maps::memory_weight(alpha, m);
            EXPECT_GT(c, 0.0);
            EXPECT_LT(c, prev);
            prev = c;
        }
    }
}

TEST(MemoryWeights, TelescopeToPower) {
    Gen gen(92);
    for (int i = 0; i < 50; ++i) {
        const double alpha = gen.uniform(0.05, 1.0);
        const std::size_t n = static_cast<std::size_t>(gen.integer(1, 3000));
        double s = 0.0;
        for (std::size_t m = 1; m <= n; ++m) s += maps::memory_weight(alpha, m);
        EXPECT_NEAR(s * alpha / std::pow(static_cast<double>(n), alpha), 1.0, 1e-12);
    }
}

TEST(MemoryWeights, UnitOrderIsOne) {
    for (std::size_t m = 1; m < 100; ++m) EXPECT_NEAR(maps::memory_weight(1.0, m), 1.0, 1e-15);
    EXPECT_THROW(maps::memory_weight(0.5, 0), DomainError);
}

TEST(IterateMap, UnitOrderIsMemorylessRecursion) {
    auto G = [](double x) { return 0.5 * std::sin(x) - 0.1 * x; };
    const auto orbit = maps::iterate_map({1.0, 0.3, 0.2, G}, 100);
    double x = 0.3;
    for (std::size_t n = 1; n <= 100; ++n) {
        x = x + 0.2 * G(x);
        EXPECT_EQ(orbit.samples[n], x);
    }
}

TEST(IterateMap, DirectSumOracle) {
    const double alpha = 0.6, h = 0.1, x0 = 0.5;
    auto G = [](double x) { return -x + 0.2; };
    const auto orbit = maps::iterate_map({alpha, x0, h, G}, 40);
    std::vector<double> x{x0};
    for (int n = 1; n <= 40; ++n) {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            s += (std::pow(n - j, alpha) - std::pow(n - j - 1, alpha)) * G(x[j]);
        x.push_back(x0 + std::pow(h, alpha) / std::tgamma(alpha + 1) * s);
    }
    for (int n = 0; n <= 40; ++n) EXPECT_NEAR(orbit.samples[n], x[n], 1e-13);
}

TEST(IterateMap, ApproximatesFractionalRelaxation) {
    const double alpha = 0.7;
    const auto orbit = maps::iterate_map({alpha, 1.0, 1.0 / 2048, [](double x) { return -x; }}, 2048);
    const auto y = ivp::solve_adams({alpha, 0.0, 1.0, 1.0, [](double, double v) { return -v; }}, {2048, 1});
    EXPECT_NEAR(orbit.samples.back(), y.values.back(), 1e-3);
}

TEST(IterateMap, DivergenceIsFlagged) {
    const auto orbit = maps::iterate_map({0.5, 1.0, 1.0, [](double x) { return x * x; }}, 100);
    ASSERT_TRUE(orbit.diverged_at.has_value());
    EXPECT_EQ(orbit.samples.size(), *orbit.diverged_at);
}

TEST(IterateMap, ValidatesSpec) {
    EXPECT_THROW(maps::iterate_map({0.0, 0.0, 1.0, [](double x) { return x; }}, 5), DomainError);
    EXPECT_THROW(maps::iterate_map({0.5, 0.0, -1.0, [](double x) { return x; }}, 5), DomainError);
    EXPECT_THROW(maps::iterate_map({0.5, 0.0, 1.0, {}}, 5), DomainError);
}

TEST(Bifurcation, LogisticPeriodDoubling) {
    // x_{n+1} = x_n + K x_n (1 - x_n) at alpha = 1, h = 1.
    maps::MapFamily family{1.0, 0.1, 1.0, [](double K, double x) { return K * x * (1 - x); }};
    const auto rows = maps::bifurcation_scan(family, {1.8, 2.3, 2.5}, 2000, 64);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(maps::count_clusters(rows[0].samples, 1e-6), 1u);
    EXPECT_EQ(maps::count_clusters(rows[1].samples, 1e-6), 2u);
    EXPECT_EQ(maps::count_clusters(rows[2].samples, 1e-6), 4u);
    for (const auto& r : rows) {
        EXPECT_FALSE(r.divergent);
        EXPECT_EQ(r.samples.size(), 64u);
    }
}

TEST(Bifurcation, CountClusters) {
    EXPECT_EQ(maps::count_clusters({}, 0.1), 0u);
    EXPECT_EQ(maps::count_clusters({1.0, 1.05, 3.0, 2.0, 2.01}, 0.1), 3u);
}
