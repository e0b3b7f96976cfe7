#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "fraclab/grid.hpp"

namespace testing_support {

// Deterministic generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
};

inline double max_abs_diff(const fraclab::GridFunction& a, const fraclab::GridFunction& b, std::size_t from = 0,
                           std::size_t trim = 0) {
    double m = 0.0;
    for (std::size_t i = from; i + trim < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_error(const fraclab::GridFunction& a, const std::function<double(double)>& f, std::size_t from = 0,
                        std::size_t trim = 0) {
    double m = 0.0;
    for (std::size_t i = from; i + trim < a.size(); ++i) m = std::max(m, std::abs(a[i] - f(a.t(i))));
    return m;
}

// E_a(z) by direct summation; adequate for |z| <= 3.
inline double ml_series(double a, double b, double z) {
    double sum = 0.0;
    for (int k = 0; k < 400; ++k) {
        const double arg = a * k + b;
        if (arg > 170.0) break;
        const double term = std::pow(z, k) / std::tgamma(arg);
        sum += term;
        if (k > 10 && std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace testing_support
