#pragma once

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "fraclab/gfc.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/gridops.hpp"
#include "fraclab/ivp.hpp"
#include "fraclab/maps.hpp"
#include "fraclab/specfun.hpp"
#include "fraclab/spectral.hpp"
#include "fraclab/tvp.hpp"

/// Self-checks exposed through `fraclab verify`. Output carries no timings.
namespace fraclab::verify {

struct Check {
    std::string suite;
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"fundamental-theorems", "sonine", "ivp", "spectral",
                                                   "tvp", "maps", "properties"};
    return names;
}

namespace detail {

inline Check make(const std::string& suite, const std::string& name, double value, double tol) {
    return {suite, name, value, tol, std::isfinite(value) && value <= tol};
}

inline double max_interior(const GridFunction& a, const std::function<double(double)>& f) {
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < a.size(); ++i) m = std::max(m, std::abs(a[i] - f(a.t(i))));
    return m;
}

inline std::string tag(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

inline double left_inverse_error(double alpha, std::size_t N) {
    auto f = GridFunction::sample([](double t) { return std::sin(t); }, 0, 1, N);
    return max_interior(rl_derivative(rl_integral(f, alpha), alpha), [](double t) { return std::sin(t); });
}

inline std::vector<Check> fundamental(const std::string& s) {
    std::vector<Check> out;
    for (double a : {0.3, 0.5, 0.7}) {
        const double e512 = left_inverse_error(a, 512), e1024 = left_inverse_error(a, 1024);
        out.push_back(make(s, "rl_left_inverse_alpha_" + tag(a), e1024, 5e-3));
        out.push_back(make(s, "rl_left_inverse_order_gap_alpha_" + tag(a),
                           std::abs(std::log2(e512 / e1024) - (2.0 - a)), 0.25));
    }
    {
        auto f = GridFunction::sample([](double t) { return std::exp(t); }, 0, 1, 2048);
        const auto lhs = rl_integral(rl_integral(f, 0.4), 0.3), rhs = rl_integral(f, 0.7);
        double m = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(lhs[i] - rhs[i]));
        out.push_back(make(s, "semigroup_0.3_0.4", m, 1e-4));
    }
    {
        auto f = GridFunction::sample([](double t) { return t * t; }, 0, 1, 1024);
        const auto h0 = hilfer_derivative(f, {0.5, 0.0}), rl = rl_derivative(f, 0.5);
        double bits = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) bits = std::max(bits, std::abs(h0[i] - rl[i]));
        out.push_back(make(s, "hilfer_gamma0_equals_rl", bits, 0.0));
        const auto h1 = hilfer_derivative(f, {0.5, 0.5}), c = caputo_derivative(f, 0.5);
        double m = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(h1[i] - c[i]));
        out.push_back(make(s, "hilfer_endpoint_equals_caputo", m, 1e-4));
    }
    {
        auto fn = [](double t) { return t * std::exp(-t); };
        auto f = GridFunction::sample(fn, 0, 1, 2048);
        out.push_back(make(s, "nth_level_left_inverse",
                           max_interior(nth_level_derivative(rl_integral(f, 0.4), {0.4, {0.2, 0.3}}), fn), 1e-2));
    }
    {
        const auto pair = gfc::make_multiterm_pair({{1.0, 1.0}, {0.3, 0.7}});
        auto fn = [](double t) { return t * std::cos(t); };
        auto f = GridFunction::sample(fn, 0, 1, 2048);
        out.push_back(make(s, "gfc_first_theorem", max_interior(gfc::gfd_rl(pair, gfc::gfi(pair, f)), fn), 1e-2));
        const auto l2 = gfc::extend_to_Ln(pair, 2);
        auto g = GridFunction::sample([](double t) { return std::exp(t); }, 0, 1, 2048);
        const auto r = gfc::gfi(l2, gfc::gfd_caputo(l2, g));
        double m = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double t = r.t(i);
            m = std::max(m, std::abs(r[i] - (std::exp(t) - 1.0 - t)));
        }
        out.push_back(make(s, "gfc_second_theorem_level2", m, 1e-2));
    }
    return out;
}

inline std::vector<Check> sonine(const std::string& s) {
    std::vector<Check> out;
    out.push_back(make(s, "power_pair_residual", gfc::make_power_pair(0.3).residual, 1e-8));
    const auto mt = gfc::make_multiterm_pair({{1.0, 1.0}, {0.3, 0.7}});
    out.push_back(make(s, "two_term_pair_residual", mt.residual, 1e-6));
    out.push_back(make(s, "level2_extension_residual", gfc::extend_to_Ln(mt, 2).residual, 1e-6));
    out.push_back(make(s, "gamma_pair_residual", gfc::make_gamma_pair({0.4, 3.0}).residual, 1e-8));
    out.push_back(make(s, "gamma_normalization", gfc::gamma_lag_normalization_error({0.4, 3.0}), 1e-10));
    return out;
}

inline std::vector<Check> ivp_suite(const std::string& s) {
    std::vector<Check> out;
    for (double a : {0.3, 0.5, 0.7, 0.9}) {
        ivp::FodeProblem p{a, 0, 1, 1, [](double, double y) { return -y; }};
        const double exact = mittag_leffler(a, 1.0, -1.0);
        const double y = ivp::solve_adams(p, {2048, 1}).values.back();
        out.push_back(make(s, "adams_vs_mittag_leffler_alpha_" + tag(a), std::abs(y - exact) / exact, 1e-4));
    }
    const auto q = ivp::diffusive_quadrature(0.5, 1e-6, 1e6, 14, 8);
    out.push_back(make(s, "laplace_identity_M120", ivp::laplace_identity_error(0.5, q, {0.1, 1.0}), 1e-6));
    {
        ivp::FodeProblem p{0.4, 0, 1, 1, [](double, double y) { return -y; }};
        ivp::DiffusiveConfig c;
        c.N = 4096;
        const double d = ivp::solve_diffusive(p, c).values.back();
        const double a = ivp::solve_adams(p, {4096, 1}).values.back();
        out.push_back(make(s, "diffusive_vs_adams_alpha_0.4", std::abs(d - a), 5e-4));
    }
    return out;
}

inline std::vector<Check> spectral_suite(const std::string& s) {
    std::vector<Check> out;
    for (double a : {0.3, 0.5, 0.9})
        out.push_back(make(s, "off_diagonal_ratio_alpha_" + tag(a),
                           spectral::off_diagonal_ratio(spectral::stiffness(a, 16)), 1e-8));
    {
        const double a = 0.5;
        const double c = gamma(1.0 + a / 2) / gamma(1.0 - a / 2);
        const auto sol = spectral::solve_model_problem(
            a, [c, a](double t) { return c * std::pow(1.0 + t, -a / 2); }, 0.0, 16);
        double dev = std::abs(sol.coefficients[0] - 1.0);
        for (std::size_t n = 1; n < sol.coefficients.size(); ++n) dev = std::max(dev, std::abs(sol.coefficients[n]));
        out.push_back(make(s, "manufactured_recovery", dev, 1e-8));
    }
    {
        const double a = 0.5;
        auto f = [](double t) { return std::cos(t); };
        const auto ref = spectral::solve_model_problem(a, f, 0.0, 64);
        const auto gl = quad::gauss_legendre(200);
        auto err = [&](int N) {
            const auto sol = spectral::solve_model_problem(a, f, 0.0, N);
            double e = 0.0;
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                const double d = spectral::evaluate_solution(sol, gl.nodes[i]) -
                                 spectral::evaluate_solution(ref, gl.nodes[i]);
                e += gl.weights[i] * d * d;
            }
            return std::sqrt(e);
        };
        out.push_back(make(s, "smooth_forcing_error_ratio_16_8", err(16) / err(8), 0.1));
    }
    return out;
}

inline std::vector<Check> tvp_suite(const std::string& s) {
    std::vector<Check> out;
    const double ystar = mittag_leffler(0.6, 1.0, -1.0);
    tvp::TvpProblem p{0.6, 0, 1, 1, ystar, [](double, double y) { return -y; }};
    const auto sh = tvp::solve_shooting(p, {0.0, 2.0, 30, 1e-10}, {2048, 1});
    out.push_back(make(s, "shooting_recovers_y0", std::abs(sh.y_a - 1.0), 1e-4));
    out.push_back(make(s, "shooting_solves", sh.solves, 4));
    const auto fr = tvp::solve_fredholm_collocation(p, 2048);
    double m = 0.0;
    for (std::size_t i = 0; i < fr.y.size(); ++i) m = std::max(m, std::abs(fr.y[i] - sh.trajectory[i]));
    out.push_back(make(s, "fredholm_vs_shooting", m, 5e-4));
    return out;
}

inline std::vector<Check> maps_suite(const std::string& s) {
    std::vector<Check> out;
    auto G = [](double x) { return 2.3 * x * (1.0 - x); };
    const auto orbit = maps::iterate_map({1.0, 0.3, 0.5, G}, 500);
    double x = 0.3, bits = 0.0;
    for (std::size_t n = 1; n < orbit.samples.size(); ++n) {
        x = x + 0.5 * G(x);
        bits = std::max(bits, std::abs(orbit.samples[n] - x));
    }
    out.push_back(make(s, "alpha1_reduction", bits, 0.0));
    double worst = 0.0;
    for (double a : {0.2, 0.5, 0.8}) {
        double sum = 0.0;
        for (std::size_t m = 1; m <= 10000; ++m) {
            sum += maps::memory_weight(a, m);
            if (m % 1000 == 0) {
                const double exact = std::pow(static_cast<double>(m), a) / a;
                worst = std::max(worst, std::abs(sum - exact) / exact);
            }
        }
    }
    out.push_back(make(s, "weight_telescoping", worst, 1e-12));
    {
        auto kick = [](double v) { return 0.5 * v * (1.0 - v); };
        const auto o = maps::iterate_map({0.7, 0.1, 1.0 / 256, kick}, 1280);
        const auto y = ivp::solve_adams({0.7, 0, 5, 0.1, [kick](double, double v) { return kick(v); }}, {1280, 1});
        double m = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) m = std::max(m, std::abs(o.samples[i] - y[i]));
        out.push_back(make(s, "smooth_regime_vs_adams", m, 1e-2));
    }
    return out;
}

/// Randomized identities; `seed` fixes the draws.
inline std::vector<Check> properties(const std::string& s, unsigned long long seed) {
    std::vector<Check> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> order(0.05, 0.95), coef(-2.0, 2.0);
    double linear = 0.0, weights = 1.0, monomial = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double a = order(rng), c1 = coef(rng), c2 = coef(rng);
        const std::size_t N = 256;
        auto f = GridFunction::sample([](double t) { return std::cos(3 * t); }, 0, 1, N);
        auto g = GridFunction::sample([](double t) { return t * t * t; }, 0, 1, N);
        const auto lhs = rl_integral(combine(c1, f, c2, g), a);
        const auto rhs = combine(c1, rl_integral(f, a), c2, rl_integral(g, a));
        for (std::size_t i = 0; i < lhs.size(); ++i) linear = std::max(linear, std::abs(lhs[i] - rhs[i]));
        const auto w = rl_integral_weights(a, 1.0 / N, N);
        for (double x : w) weights = std::min(weights, x);
        // Piecewise-linear data is integrated exactly: I^a t = t^(1+a) / Gamma(2+a).
        auto lin = GridFunction::sample([](double t) { return t; }, 0, 1, N);
        const auto il = rl_integral(lin, a);
        for (std::size_t i = 0; i < il.size(); ++i) {
            const double t = il.t(i);
            monomial = std::max(monomial, std::abs(il[i] - std::pow(t, 1 + a) / gamma(2 + a)));
        }
    }
    out.push_back(make(s, "integral_linearity", linear, 1e-12));
    out.push_back(make(s, "integral_weights_nonnegative", -weights, 0.0));
    out.push_back(make(s, "linear_data_exact", monomial, 1e-12));
    return out;
}

}  // namespace detail

/// Runs one suite by name, or every suite for "all".
inline std::vector<Check> run_suite(const std::string& name, unsigned long long seed = 1) {
    if (name == "all") {
        std::vector<Check> all;
        for (const auto& n : suite_names()) {
            auto part = run_suite(n, seed);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    if (name == "fundamental-theorems") return detail::fundamental(name);
    if (name == "sonine") return detail::sonine(name);
    if (name == "ivp") return detail::ivp_suite(name);
    if (name == "spectral") return detail::spectral_suite(name);
    if (name == "tvp") return detail::tvp_suite(name);
    if (name == "maps") return detail::maps_suite(name);
    if (name == "properties") return detail::properties(name, seed);
    throw ConfigError("verify: unknown suite '" + name + "'");
}

inline void write_checks(std::ostream& os, const std::vector<Check>& checks) {
    os << "suite,check,value,tolerance,status\n";
    for (const auto& c : checks)
        os << c.suite << "," << c.name << "," << format_double(c.value) << "," << format_double(c.tolerance) << ","
           << (c.pass ? "pass" : "fail") << "\n";
}

}  // namespace fraclab::verify
