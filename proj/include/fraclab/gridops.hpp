#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fraclab/convolution.hpp"
#include "fraclab/errors.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/kernels.hpp"

/// Grid operators: Riemann-Liouville integral and the derivative families built on it.
namespace fraclab {

struct HilferParams {
    double alpha;
    double gamma1;
};

struct NthLevelParams {
    double alpha;
    std::vector<double> gamma;
};

namespace detail {

inline void require_open_unit(double alpha, const char* op) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError(std::string(op) + ": order must lie in (0, 1)");
}

/// Leading samples to distrust when a derivative of order alpha hits f(t0) != 0.
inline std::size_t singular_prefix(const GridFunction& f, double alpha) {
    if (f.values[0] == 0.0) return f.unreliable_prefix;
    const auto k = static_cast<std::size_t>(std::ceil(1.0 / alpha));
    return std::max({f.unreliable_prefix, std::size_t{2}, k});
}

}  // namespace detail

/// Quadrature weights of I^alpha at sample n: entry j multiplies f_j.
inline std::vector<double> rl_integral_weights(double alpha, double h, std::size_t n) {
    if (!(alpha > 0)) throw DomainError("rl_integral_weights: order must be positive");
    auto kernel = PowerSumKernel::single(alpha);
    ProductTrapezoid pt(*kernel, h, n);
    std::vector<double> w(n + 1);
    for (std::size_t j = 0; j <= n; ++j) w[j] = pt.weight(n, j);
    return w;
}

/// Riemann-Liouville integral I^alpha f by product trapezoid; I^0 is the identity.
inline GridFunction rl_integral(const GridFunction& f, double alpha) {
    if (!(alpha >= 0) || !std::isfinite(alpha)) throw DomainError("rl_integral: order must be >= 0");
    f.validate();
    if (alpha == 0.0) return f;
    return convolve(*PowerSumKernel::single(alpha), f);
}

/// Riemann-Liouville derivative d/dt I^(1-alpha) f.
inline GridFunction rl_derivative(const GridFunction& f, double alpha) {
    detail::require_open_unit(alpha, "rl_derivative");
    GridFunction d = derivative(rl_integral(f, 1.0 - alpha));
    d.unreliable_prefix = detail::singular_prefix(f, alpha);
    return d;
}

/// Caputo derivative I^(1-alpha) f'.
inline GridFunction caputo_derivative(const GridFunction& f, double alpha) {
    detail::require_open_unit(alpha, "caputo_derivative");
    return rl_integral(derivative(f), 1.0 - alpha);
}

/// Hilfer derivative I^gamma1 d/dt I^(1-alpha-gamma1) f.
inline GridFunction hilfer_derivative(const GridFunction& f, const HilferParams& p) {
    if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw DomainError("hilfer_derivative: alpha must lie in (0, 1]");
    if (!(p.gamma1 >= 0.0 && p.gamma1 <= 1.0 - p.alpha))
        throw DomainError("hilfer_derivative: gamma1 must lie in [0, 1 - alpha]");
    GridFunction d = rl_integral(derivative(rl_integral(f, 1.0 - p.alpha - p.gamma1)), p.gamma1);
    if (p.gamma1 < 1.0 - p.alpha) d.unreliable_prefix = detail::singular_prefix(f, p.alpha);
    return d;
}

/// Throws ConstraintError naming the first k with gamma_k < 0 or alpha + s_k > k.
inline void validate(const NthLevelParams& p) {
    if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw DomainError("nth_level: alpha must lie in (0, 1]");
    if (p.gamma.empty()) throw DomainError("nth_level: gamma must have at least one entry");
    double s = 0.0;
    for (std::size_t k = 1; k <= p.gamma.size(); ++k) {
        const double g = p.gamma[k - 1];
        if (!(g >= 0.0))
            throw ConstraintError("nth_level: gamma_" + std::to_string(k) + " is negative", k);
        s += g;
        if (p.alpha + s > static_cast<double>(k) + 1e-14)
            throw ConstraintError("nth_level: alpha + s_" + std::to_string(k) + " exceeds " +
                                      std::to_string(k), k);
    }
}

/// nth-level derivative prod_{k=1}^n (I^gamma_k d/dt) applied to I^(n-alpha-s_n) f.
inline GridFunction nth_level_derivative(const GridFunction& f, const NthLevelParams& p) {
    validate(p);
    const std::size_t n = p.gamma.size();
    double s_n = 0.0;
    for (double g : p.gamma) s_n += g;
    GridFunction g = rl_integral(f, std::max(0.0, static_cast<double>(n) - p.alpha - s_n));
    for (std::size_t k = n; k >= 1; --k) g = rl_integral(derivative(g), p.gamma[k - 1]);
    g.unreliable_prefix = detail::singular_prefix(f, p.alpha);
    return g;
}

/// Grunwald-Letnikov coefficients w_j = (-1)^j C(alpha, j).
inline std::vector<double> gl_weights(double alpha, std::size_t count) {
    std::vector<double> w(count, 0.0);
    if (count == 0) return w;
    w[0] = 1.0;
    for (std::size_t j = 1; j < count; ++j)
        w[j] = w[j - 1] * (1.0 - (alpha + 1.0) / static_cast<double>(j));
    return w;
}

/// Grunwald-Letnikov derivative h^-alpha sum_j w_j f_{i-j}.
inline GridFunction gl_derivative(const GridFunction& f, double alpha) {
    detail::require_open_unit(alpha, "gl_derivative");
    f.validate();
    const auto w = gl_weights(alpha, f.size());
    GridFunction d = f.zeros_like();
    const double scale = std::pow(f.h, -alpha);
    for (std::size_t i = 0; i < f.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j <= i; ++j) s += w[j] * f.values[i - j];
        d.values[i] = scale * s;
    }
    d.unreliable_prefix = detail::singular_prefix(f, alpha);
    return d;
}

}  // namespace fraclab
