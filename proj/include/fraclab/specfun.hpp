#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "fraclab/errors.hpp"
#include "fraclab/quadrature.hpp"

/// Special functions: gamma, Mittag-Leffler, Jacobi polynomials, power kernels.
namespace fraclab {

namespace detail {

inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_p = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

/// Lanczos series sum for argument x >= 0.5 (shifted by one internally).
inline double lanczos_sum(double xm1) {
    double a = lanczos_p[0];
    for (int i = 1; i < 9; ++i) a += lanczos_p[i] / (xm1 + i);
    return a;
}

/// sin(pi x) with exact zeros at integers and argument reduction.
inline double sin_pi(double x) {
    const double n = std::round(x);
    const double r = x - n;
    const double s = std::sin(std::numbers::pi * r);
    return std::fmod(std::abs(n), 2.0) == 1.0 ? -s : s;
}

inline bool is_nonpositive_integer(double x) { return x <= 0 && x == std::floor(x); }

}  // namespace detail

inline constexpr double gamma_overflow = 171.6243769563027;

/// Gamma function. Exact at positive integers up to 170.
inline double gamma(double x) {
    if (std::isnan(x)) throw DomainError("gamma: NaN argument");
    if (detail::is_nonpositive_integer(x))
        throw PoleError("gamma: pole at non-positive integer " + std::to_string(x));
    if (x > gamma_overflow) throw OverflowError("gamma: overflow for x = " + std::to_string(x));
    if (x == std::floor(x) && x <= 171.0) {
        double f = 1.0;
        for (int i = 2; i < static_cast<int>(x); ++i) f *= i;
        return f;
    }
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        const double s = detail::sin_pi(x);
        const double g = gamma(1.0 - x);
        const double denom = s * g;
        if (!std::isfinite(denom)) return 0.0;  // 1/Gamma(1-x) underflows for very negative x
        return std::numbers::pi / denom;
    }
    const double xm1 = x - 1.0;
    const double t = xm1 + detail::lanczos_g + 0.5;
    const double a = detail::lanczos_sum(xm1);
    const double half = std::pow(t, 0.5 * (xm1 + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * a * (half * std::exp(-t)) * half;
}

/// log|Gamma(x)| for x > 0.
inline double log_gamma(double x) {
    if (!(x > 0)) throw DomainError("log_gamma: argument must be positive");
    if (x < 0.5) return std::log(std::numbers::pi / std::abs(detail::sin_pi(x))) - log_gamma(1.0 - x);
    if (x <= 20.0) return std::log(gamma(x));
    const double xm1 = x - 1.0;
    const double t = xm1 + detail::lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (xm1 + 0.5) * std::log(t) - t +
           std::log(detail::lanczos_sum(xm1));
}

/// Reciprocal gamma; zero at the poles of Gamma and for arguments past overflow.
inline double rgamma(double x) {
    if (detail::is_nonpositive_integer(x)) return 0.0;
    if (x > gamma_overflow) return std::exp(-log_gamma(x));
    return 1.0 / gamma(x);
}

/// Power kernel h_beta(t) = t^(beta-1) / Gamma(beta).
inline double power_kernel(double beta, double t) {
    if (!(beta > 0)) throw DomainError("power_kernel: beta must be positive");
    if (!(t > 0)) throw DomainError("power_kernel: t must be positive");
    if (beta == 1.0) return 1.0;
    return std::exp((beta - 1.0) * std::log(t) - log_gamma(beta));
}

/// Binomial coefficient C(x, k) for real x and integer k >= 0.
inline double binomial(double x, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c *= (x - (i - 1)) / i;
    return c;
}

/// Jacobi polynomial P_n^{(a,b)}(t) by the three-term recurrence.
inline double jacobi_poly(int n, double a, double b, double t) {
    if (n < 0) throw DomainError("jacobi_poly: degree must be nonnegative");
    if (!(a > -1) || !(b > -1)) throw DomainError("jacobi_poly: parameters must exceed -1");
    if (!(t >= -1.0 && t <= 1.0)) throw DomainError("jacobi_poly: t outside [-1, 1]");
    if (n == 0) return 1.0;
    double p0 = 1.0;
    double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * t;
    const double ab = a + b;
    for (int k = 2; k <= n; ++k) {
        const double c = 2.0 * k + ab;
        const double a1 = 2.0 * k * (k + ab) * (c - 2.0);
        const double a2 = (c - 1.0) * (a * a - b * b);
        const double a3 = (c - 2.0) * (c - 1.0) * c;
        const double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        const double p2 = ((a2 + a3 * t) * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// Derivative d/dt P_n^{(a,b)}(t).
inline double jacobi_poly_derivative(int n, double a, double b, double t) {
    if (n == 0) return 0.0;
    return 0.5 * (n + a + b + 1.0) * jacobi_poly(n - 1, a + 1.0, b + 1.0, t);
}

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
inline double gamma_p(double a, double x) {
    if (!(a > 0)) throw DomainError("gamma_p: shape must be positive");
    if (x < 0) throw DomainError("gamma_p: x must be nonnegative");
    if (x == 0) return 0.0;
    const double log_prefix = a * std::log(x) - x - log_gamma(a);
    const double eps = std::numeric_limits<double>::epsilon();
    if (x < a + 1.0) {
        double term = 1.0 / a, sum = term, ap = a;
        for (int i = 0; i < 10000; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * eps * 0.25) break;
        }
        return sum * std::exp(log_prefix);
    }
    // Continued fraction for Q(a, x), modified Lentz.
    const double tiny = 1e-300;
    double bcf = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / bcf, h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        bcf += 2.0;
        d = an * d + bcf;
        if (std::abs(d) < tiny) d = tiny;
        c = bcf + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < eps * 0.25) break;
    }
    return 1.0 - std::exp(log_prefix) * h;
}

/// Value with an accompanying absolute error estimate.
struct Estimate {
    double value;
    double error;
};

namespace detail {

/// Taylor series of E_{alpha,beta}(z); error estimate includes cancellation.
inline Estimate ml_series(double alpha, double beta, double z) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double logz = std::log(std::abs(z));
    const bool negative = z < 0;
    double sum = 0.0, abs_sum = 0.0, last = 0.0;
    bool decreasing_seen = false;
    for (int k = 0; k < 100000; ++k) {
        const double arg = alpha * k + beta;
        double term;
        if (arg <= 0 || arg < 10.0) {
            term = std::pow(std::abs(z), k) * rgamma(arg);
        } else {
            const double lt = k * logz - log_gamma(arg);
            if (lt > 709.0) throw OverflowError("mittag_leffler: series term overflow");
            term = std::exp(lt);
        }
        if (negative && (k % 2 == 1)) term = -term;
        sum += term;
        abs_sum += std::abs(term);
        const double mag = std::abs(term);
        if (k > 0 && mag <= last) decreasing_seen = true;
        last = std::max(mag, 0.0);
        if (decreasing_seen && mag <= eps * 1e-3 * abs_sum && alpha * k + beta > 1.0 &&
            k * logz < log_gamma(std::max(arg, 1.0)) + 1.0) {
            if (!std::isfinite(sum)) throw OverflowError("mittag_leffler: overflow");
            return {sum, 8.0 * eps * abs_sum + mag};
        }
        if (!std::isfinite(abs_sum)) throw OverflowError("mittag_leffler: overflow");
    }
    throw ConvergenceError("mittag_leffler: series did not converge");
}

/// Contour-collapse representation valid for 0 < alpha < 2, alpha != 1, beta < 1 + alpha.
inline Estimate ml_integral(double alpha, double beta, double z) {
    const double pi = std::numbers::pi;
    double residue = 0.0;
    if (z > 0) {
        const double s = std::pow(z, 1.0 / alpha);
        if (s > 700.0) throw OverflowError("mittag_leffler: overflow");
        residue = std::pow(s, 1.0 - beta) * std::exp(s) / alpha;
    } else if (alpha > 1.0) {
        const double s = std::pow(-z, 1.0 / alpha);
        const double theta = pi / alpha;
        const double mag = std::pow(s, 1.0 - beta) * std::exp(s * std::cos(theta));
        residue = 2.0 / alpha * mag * std::cos((1.0 - beta) * theta + s * std::sin(theta));
    }
    // Substitution u = r^q removes the r^(alpha-beta) endpoint factor.
    const double q = 1.0 + alpha - beta;
    const double sb = std::sin(pi * beta);
    const double sab = std::sin(pi * (alpha - beta));
    const double ca = std::cos(pi * alpha);
    auto integrand = [&](double u) {
        if (u <= 0) u = std::numeric_limits<double>::min();
        const double r = std::pow(u, 1.0 / q);
        const double ra = std::pow(r, alpha);
        const double num = ra * sb + z * sab;
        const double den = ra * ra - 2.0 * ra * z * ca + z * z;
        return std::exp(-r) * num / den;
    };
    const double r_max = 60.0;
    const double u_max = std::pow(r_max, q);
    // Split near the peak of the denominator to help the adaptive rule.
    const double peak = std::pow(std::pow(std::abs(z), 1.0 / alpha), q);
    // A coarse pass fixes an absolute floor so that a piece much smaller than
    // the total is not driven to a relative accuracy it cannot reach.
    const double split = std::min(peak, u_max);
    double floor = quad::gauss_kronrod(integrand, 0.0, split, 1e-6).magnitude;
    if (peak < u_max) floor += quad::gauss_kronrod(integrand, peak, u_max, 1e-6).magnitude;
    floor *= 1e-15;
    auto part1 = quad::gauss_kronrod(integrand, 0.0, split, 1e-14, floor, 20000);
    quad::Result part2{};
    if (peak < u_max) part2 = quad::gauss_kronrod(integrand, peak, u_max, 1e-14, floor, 20000);
    else part2.converged = true;
    const double scale = 1.0 / (pi * q);
    const double value = residue + scale * (part1.value + part2.value);
    const double eps = std::numeric_limits<double>::epsilon();
    double error = scale * (part1.error + part2.error) +
                   16.0 * eps * (std::abs(residue) + scale * (part1.magnitude + part2.magnitude));
    if (!part1.converged || !part2.converged) error = std::max(error, std::abs(value));
    return {value, error};
}

}  // namespace detail

/// E_{alpha,beta}(z) with an absolute error estimate; throws on failure.
///
/// Uses the Taylor series where it is free of cancellation and a
/// contour-collapse integral (plus pole residues) otherwise.
inline Estimate mittag_leffler_estimate(double alpha, double beta, double z) {
    if (!(alpha > 0)) throw DomainError("mittag_leffler: alpha must be positive");
    if (!std::isfinite(z) || !std::isfinite(beta)) throw DomainError("mittag_leffler: non-finite argument");
    if (z == 0) return {rgamma(beta), 0.0};
    const double eps = std::numeric_limits<double>::epsilon();
    if (alpha == 1.0 && beta == 1.0) return {std::exp(z), eps * std::exp(z)};

    // The series is cancellation-free for z > 0 and cheap for small |z|.
    if (z > 0 || std::abs(z) <= 1.0) {
        if (z > 0 && std::pow(z, 1.0 / alpha) > 700.0)
            throw OverflowError("mittag_leffler: overflow");
        auto s = detail::ml_series(alpha, beta, z);
        if (s.error <= 1e-13 * std::abs(s.value) || std::abs(z) <= 1.0) return s;
    }

    if (alpha == 1.0) {
        const double m = std::round(beta);
        if (m == beta && m >= 1.0) {
            // E_{1,m}(z) = z^{1-m} (e^z - sum_{k<m-1} z^k / k!).
            double poly = 0.0, term = 1.0, abs_poly = 0.0;
            for (int k = 0; k <= m - 2; ++k) {
                if (k > 0) term *= z / k;
                poly += term;
                abs_poly += std::abs(term);
            }
            const double v = (std::exp(z) - poly) * std::pow(z, 1.0 - m);
            const double err = 4.0 * eps * (std::exp(z) + abs_poly) * std::abs(std::pow(z, 1.0 - m));
            if (err <= 1e-10 * std::abs(v)) return {v, err};
        }
        auto s = detail::ml_series(alpha, beta, z);
        if (s.error <= 1e-10 * std::abs(s.value)) return s;
        throw ConvergenceError("mittag_leffler: no accurate method for alpha = 1 and this beta");
    }
    if (alpha >= 2.0) {
        auto s = detail::ml_series(alpha, beta, z);
        if (s.error <= 1e-10 * std::abs(s.value)) return s;
        throw ConvergenceError("mittag_leffler: alpha >= 2 supported only where the series converges");
    }
    if (beta > 1.0 + 0.5 * alpha) {
        // E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z; keeps 1 + a - b away from zero.
        auto inner = mittag_leffler_estimate(alpha, beta - alpha, z);
        const double g = rgamma(beta - alpha);
        return {(inner.value - g) / z, (inner.error + eps * std::abs(g)) / std::abs(z)};
    }
    return detail::ml_integral(alpha, beta, z);
}

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z.
inline double mittag_leffler(double alpha, double beta, double z) {
    auto e = mittag_leffler_estimate(alpha, beta, z);
    const double tol = 1e-11 * std::abs(e.value) + 1e-300;
    if (!(e.error <= tol) && !(e.error <= 1e-15)) {
        throw ConvergenceError("mittag_leffler: error estimate " + std::to_string(e.error) +
                               " exceeds tolerance");
    }
    return e.value;
}

/// One-parameter Mittag-Leffler function E_alpha(z).
inline double mittag_leffler(double alpha, double z) { return mittag_leffler(alpha, 1.0, z); }

}  // namespace fraclab
