#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fraclab/convolution.hpp"
#include "fraclab/errors.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/ivp.hpp"
#include "fraclab/kernels.hpp"

/// Scalar terminal value problems D^alpha y = f(t, y), y(b) = ystar.
namespace fraclab::tvp {

struct TvpProblem {
    double alpha = 0.5;
    double a = 0.0;
    double b = 1.0;
    double T = 1.0;
    double ystar = 0.0;
    ivp::Rhs rhs;

    void validate() const {
        if (!(alpha > 0 && alpha <= 1)) throw DomainError("tvp: alpha must lie in (0, 1]");
        if (!(b > a)) throw DomainError("tvp: need b > a");
        if (!(a + T >= b - 1e-12 * (b - a))) throw DomainError("tvp: need a + T >= b");
        if (!std::isfinite(ystar)) throw DomainError("tvp: non-finite terminal value");
        if (!rhs) throw DomainError("tvp: missing right-hand side");
    }
};

struct ShootingConfig {
    double g0 = 0.0;
    double g1 = 1.0;
    int max_iterations = 30;
    double tolerance = 1e-10;

    void validate() const {
        if (g0 == g1) throw ConfigError("shooting: initial guesses must differ");
        if (!(tolerance > 0)) throw ConfigError("shooting: tolerance must be positive");
        if (max_iterations < 1) throw ConfigError("shooting: need max_iterations >= 1");
    }
};

/// G(t, s) = (t-s)^(alpha-1) [s <= t] - (b-s)^(alpha-1).
inline double green_kernel(double t, double s, double b, double alpha) {
    if (!(alpha > 0 && alpha <= 1)) throw DomainError("green_kernel: alpha must lie in (0, 1]");
    if (!(t <= b && s <= b)) throw DomainError("green_kernel: t and s must not exceed b");
    if (alpha < 1 && s == b) throw DomainError("green_kernel: singular at s = b", "singular_point");
    if (alpha < 1 && s == t) throw DomainError("green_kernel: singular at s = t", "singular_point");
    const double tail = alpha == 1 ? 1.0 : std::pow(b - s, alpha - 1.0);
    if (s > t) return -tail;
    const double head = alpha == 1 ? 1.0 : std::pow(t - s, alpha - 1.0);
    return head - tail;
}

struct ShootingResult {
    double y_a = 0.0;
    GridFunction trajectory;
    double residual = 0.0;   ///< |y(b) - ystar| at full resolution
    int iterations = 0;      ///< secant updates
    int solves = 0;          ///< IVP solves on [a, b]
    bool converged = false;
};

/// Secant shooting on g -> y(b; g) - ystar with the Adams solver.
///
/// The first pair of solves uses N/8 steps; their secant root seeds the
/// full-resolution phase, which starts with the coarse slope and continues
/// as a secant on full-resolution values (bisection whenever a sign change
/// is bracketed and the secant step leaves the bracket). On convergence the
/// problem is re-solved on [a, a+T] with the same step, so the returned
/// trajectory reproduces the accepted y(b). T must be a multiple of (b-a)/N.
inline ShootingResult solve_shooting(const TvpProblem& p, const ShootingConfig& c, const ivp::AdamsConfig& ivp_config) {
    p.validate();
    c.validate();
    const std::size_t N = ivp_config.N;
    if (N < 2) throw ConfigError("shooting: need N >= 2");
    const double span = p.b - p.a;
    const double h = span / static_cast<double>(N);
    const double ratio = p.T / h;
    const auto N_total = static_cast<std::size_t>(std::llround(ratio));
    if (std::abs(ratio - static_cast<double>(N_total)) > 1e-9 * ratio)
        throw ConfigError("shooting: horizon must be a multiple of the step (b - a)/N");

    ShootingResult r;
    auto endpoint = [&](double g, std::size_t steps) {
        ivp::FodeProblem fp{p.alpha, p.a, span, g, p.rhs};
        ++r.solves;
        return ivp::solve_adams(fp, {steps, ivp_config.corrector_iterations}).values.back() - p.ystar;
    };

    const std::size_t coarse = std::max<std::size_t>(2, N / 8);
    const double c0 = endpoint(c.g0, coarse), c1 = endpoint(c.g1, coarse);
    double slope = (c1 - c0) / (c.g1 - c.g0);
    if (slope == 0.0 || !std::isfinite(slope)) throw ConvergenceError("shooting: flat shooting function", "no_convergence");
    double g = c.g1 - c1 / slope;
    ++r.iterations;

    double best_g = g, best_res = std::numeric_limits<double>::infinity();
    double prev_g = 0.0, prev_F = 0.0;
    bool have_prev = false;
    double lo = 0, hi = 0, F_lo = 0;
    bool bracket = false;
    while (true) {
        const double F = endpoint(g, N);
        if (std::abs(F) < best_res) {
            best_res = std::abs(F);
            best_g = g;
        }
        if (std::abs(F) <= c.tolerance) break;
        if (r.iterations >= c.max_iterations) break;
        if (have_prev) {
            if (F * prev_F < 0) {
                bracket = true;
                lo = prev_g;
                F_lo = prev_F;
                hi = g;
            } else if (bracket && F * F_lo < 0) {
                hi = g;
            } else if (bracket) {
                lo = g;
                F_lo = F;
            }
            const double d = (F - prev_F) / (g - prev_g);
            if (d != 0.0 && std::isfinite(d)) slope = d;
        }
        double next = g - F / slope;
        if (bracket && !(next > std::min(lo, hi) && next < std::max(lo, hi))) next = 0.5 * (lo + hi);
        prev_g = g;
        prev_F = F;
        have_prev = true;
        g = next;
        ++r.iterations;
        if (!std::isfinite(g)) break;
    }

    r.y_a = best_g;
    ivp::FodeProblem full{p.alpha, p.a, static_cast<double>(N_total) * h, best_g, p.rhs};
    r.trajectory = ivp::solve_adams(full, {N_total, ivp_config.corrector_iterations});
    r.residual = std::abs(r.trajectory.values[N] - p.ystar);
    r.converged = r.residual <= c.tolerance;
    return r;
}

struct FredholmResult {
    GridFunction y;
    double residual = 0.0;
    int picard_iterations = 0;
    int newton_iterations = 0;
};

/// Collocation of y = ystar + I^alpha F (t) - I^alpha F (b), F = f(., y), at
/// `nodes` uniform intervals of [a, b] with product-trapezoid weights.
///
/// Damped Picard (0.5) up to max_picard iterations or until the residual
/// stops decreasing, then Newton with a finite-difference Jacobian.
inline FredholmResult solve_fredholm_collocation(const TvpProblem& p, std::size_t nodes, int max_picard = 200,
                                                 double tol = 1e-10) {
    p.validate();
    if (nodes < 2) throw ConfigError("fredholm: need at least two intervals");
    if (!(tol > 0)) throw ConfigError("fredholm: tolerance must be positive");
    const std::size_t M = nodes;
    const double h = (p.b - p.a) / static_cast<double>(M);
    const auto kernel = PowerSumKernel::single(p.alpha);
    ProductTrapezoid pt(*kernel, h, M);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M + 1, M + 1);
    for (std::size_t i = 0; i <= M; ++i)
        for (std::size_t j = 0; j <= i; ++j) A(i, j) = pt.weight(i, j);
    const Eigen::RowVectorXd last = A.row(M);
    for (std::size_t i = 0; i <= M; ++i) A.row(i) -= last;
    A.row(M).setZero();

    Eigen::VectorXd t(M + 1);
    for (std::size_t i = 0; i <= M; ++i) t(i) = p.a + static_cast<double>(i) * h;
    auto F = [&](const Eigen::VectorXd& y) {
        Eigen::VectorXd v(M + 1);
        for (std::size_t i = 0; i <= M; ++i) v(i) = p.rhs(t(i), y(i));
        return v;
    };
    auto image = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return (A * F(y)).array() + p.ystar;
    };

    FredholmResult out;
    Eigen::VectorXd y = Eigen::VectorXd::Constant(M + 1, p.ystar);
    double res = (image(y) - y).cwiseAbs().maxCoeff();
    double previous = res;
    int growth = 0;
    while (res > tol && out.picard_iterations < max_picard) {
        y += 0.5 * (image(y) - y);
        ++out.picard_iterations;
        res = (image(y) - y).cwiseAbs().maxCoeff();
        if (!std::isfinite(res)) break;
        growth = res >= previous ? growth + 1 : 0;
        if (growth >= 3) break;
        previous = res;
    }
    if (!(res <= tol)) {
        if (!std::isfinite(res)) y.setConstant(p.ystar);
        for (int it = 0; it < 50; ++it) {
            const Eigen::VectorXd Fy = F(y);
            const Eigen::VectorXd R = y - A * Fy - Eigen::VectorXd::Constant(M + 1, p.ystar);
            res = R.cwiseAbs().maxCoeff();
            if (res <= tol) break;
            Eigen::VectorXd dF(M + 1);
            for (std::size_t i = 0; i <= M; ++i) {
                const double d = 1e-7 * std::max(1.0, std::abs(y(i)));
                dF(i) = (p.rhs(t(i), y(i) + d) - Fy(i)) / d;
            }
            Eigen::MatrixXd J = -A;
            for (std::size_t j = 0; j <= M; ++j) J.col(j) *= dF(j);
            J.diagonal().array() += 1.0;
            y -= J.partialPivLu().solve(R);
            ++out.newton_iterations;
        }
        res = (image(y) - y).cwiseAbs().maxCoeff();
        if (!(res <= tol))
            throw SolveError("fredholm: collocation iteration failed", res, "iteration_failure");
    }
    out.residual = res;
    out.y.t0 = p.a;
    out.y.h = h;
    out.y.values.assign(y.data(), y.data() + y.size());
    return out;
}

}  // namespace fraclab::tvp
