#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace fraclab::quad {

/// Outcome of an adaptive quadrature.
struct Result {
    double value = 0.0;
    double error = 0.0;      ///< estimated absolute error
    double magnitude = 0.0;  ///< integral of |f|, used to judge cancellation
    std::size_t evaluations = 0;
    bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error, magnitude;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double d = 0.5 * (b - a);
    const double fc = f(c);
    double k = kronrod_w[7] * fc;
    double g = gauss_w[3] * fc;
    double m = kronrod_w[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const double x = d * kronrod_x[i];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        k += kronrod_w[i] * (f1 + f2);
        m += kronrod_w[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) g += gauss_w[i / 2] * (f1 + f2);
    }
    return {a, b, k * d, std::abs((k - g) * d), m * std::abs(d)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// Bisects the segment with the largest error estimate until the total
/// estimate falls below max(abs_tol, rel_tol*|I|) or `max_segments` is reached.
template <class F>
Result gauss_kronrod(F&& f, double a, double b, double rel_tol = 1e-12, double abs_tol = 0.0,
                     std::size_t max_segments = 4000) {
    std::priority_queue<detail::Segment> queue;
    auto first = detail::gk15(f, a, b);
    Result r;
    r.value = first.value;
    r.error = first.error;
    r.magnitude = first.magnitude;
    r.evaluations = 15;
    queue.push(first);
    while (r.error > std::max(abs_tol, rel_tol * std::abs(r.value))) {
        if (queue.size() >= max_segments) return r;
        auto worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) return r;
        queue.pop();
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        r.evaluations += 30;
        r.value += left.value + right.value - worst.value;
        r.error += left.error + right.error - worst.error;
        r.magnitude += left.magnitude + right.magnitude - worst.magnitude;
        queue.push(left);
        queue.push(right);
    }
    // Re-sum from the segments to shed the drift of the running updates.
    r.value = r.error = r.magnitude = 0.0;
    while (!queue.empty()) {
        r.value += queue.top().value;
        r.error += queue.top().error;
        r.magnitude += queue.top().magnitude;
        queue.pop();
    }
    r.converged = true;
    return r;
}

/// Tanh-sinh quadrature of a vector-valued integrand over [a, b].
///
/// `f(x, out)` writes `dim` components into `out`. Abscissae are generated
/// from their distance to the nearer endpoint, so integrable endpoint
/// singularities are resolved down to the spacing of doubles near a and b;
/// nodes that round onto an endpoint are skipped. Levels are refined until
/// every component changes by less than `rel_tol` relative to the largest
/// component magnitude.
template <class F>
std::vector<double> tanh_sinh(F&& f, double a, double b, std::size_t dim, double rel_tol = 1e-13,
                              int max_level = 12, bool* converged = nullptr) {
    const double half_pi = 2.0 * std::atan(1.0);
    const double c = 0.5 * (a + b);
    const double d = 0.5 * (b - a);
    const double t_max = 4.0;
    std::vector<double> sum(dim, 0.0), out(dim), previous;

    auto add_node = [&](double t) {
        const double u = half_pi * std::sinh(t);
        const double ch = std::cosh(u);
        const double w = half_pi * std::cosh(t) / (ch * ch);
        // Distance from the nearer endpoint in units of d: 1 - tanh|u|.
        const double gap = 2.0 / (std::exp(2.0 * std::abs(u)) + 1.0);
        const double x = t < 0 ? a + d * gap : (t > 0 ? b - d * gap : c);
        if (x <= a || x >= b) return;
        f(x, out.data());
        for (std::size_t i = 0; i < dim; ++i) sum[i] += w * out[i];
    };

    double h = 1.0;
    add_node(0.0);
    for (int k = 1; k * h <= t_max; ++k) {
        add_node(k * h);
        add_node(-k * h);
    }
    auto estimate = [&](double step) {
        std::vector<double> v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = sum[i] * step * d;
        return v;
    };
    previous = estimate(h);
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (int k = 1; k * h <= t_max; k += 2) {
            add_node(k * h);
            add_node(-k * h);
        }
        auto current = estimate(h);
        double scale = 0.0, change = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            scale = std::max(scale, std::abs(current[i]));
            change = std::max(change, std::abs(current[i] - previous[i]));
        }
        previous = std::move(current);
        if (level >= 3 && change <= rel_tol * scale) {
            if (converged) *converged = true;
            return previous;
        }
    }
    if (converged) *converged = false;
    return previous;
}

/// Scalar convenience wrapper around the vector tanh-sinh rule.
template <class F>
double tanh_sinh_scalar(F&& f, double a, double b, double rel_tol = 1e-13,
                        bool* converged = nullptr) {
    auto v = tanh_sinh([&](double x, double* out) { out[0] = f(x); }, a, b, 1, rel_tol, 12,
                       converged);
    return v[0];
}

}  // namespace fraclab::quad
