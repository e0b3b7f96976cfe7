#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <string>
#include <vector>

#include "fraclab/convolution.hpp"
#include "fraclab/errors.hpp"
#include "fraclab/gauss.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/kernels.hpp"
#include "fraclab/memory.hpp"
#include "fraclab/specfun.hpp"

/// Caputo initial value problems D^alpha y = f(t, y), y(a) = y0, 0 < alpha <= 1.
namespace fraclab::ivp {

using Rhs = std::function<double(double, double)>;

struct FodeProblem {
    double alpha = 0.5;
    double a = 0.0;
    double T = 1.0;
    double y0 = 0.0;
    Rhs rhs;

    void validate() const {
        if (!(alpha > 0 && alpha <= 1)) throw DomainError("fode: alpha must lie in (0, 1]");
        if (!(T > 0) || !std::isfinite(T)) throw DomainError("fode: horizon must be positive");
        if (!std::isfinite(a) || !std::isfinite(y0)) throw DomainError("fode: non-finite data");
        if (!rhs) throw DomainError("fode: missing right-hand side");
    }
};

struct AdamsConfig {
    std::size_t N = 1024;
    int corrector_iterations = 1;
};

inline constexpr double divergence_guard = 1e15;

namespace detail {

inline void guard(double y, std::size_t step) {
    if (!std::isfinite(y) || std::abs(y) > divergence_guard)
        throw DivergenceError("solution left the overflow guard at step " + std::to_string(step), step);
}

/// m^a - (m-1)^a computed without cancellation.
inline double power_increment(double a, double m) {
    if (m <= 1.0) return 1.0;
    return -std::pow(m, a) * std::expm1(a * std::log1p(-1.0 / m));
}

}  // namespace detail

/// Adams predictor-corrector on the Volterra form y = y0 + I^alpha f(., y).
///
/// Predictor: product rectangle. Corrector: product trapezoid, repeated
/// `corrector_iterations` times. Work Theta(N^2), history memory Theta(N).
inline GridFunction solve_adams(const FodeProblem& p, const AdamsConfig& c, MemoryMeter* meter = nullptr) {
    p.validate();
    if (c.N < 2) throw ConfigError("adams: need N >= 2");
    if (c.corrector_iterations < 1) throw ConfigError("adams: need at least one corrector iteration");
    const std::size_t N = c.N;
    const double h = p.T / static_cast<double>(N);
    const double alpha = p.alpha;

    MeteredAllocator<double> alloc(meter);
    metered_vector<double> interior(N + 1, 0.0, alloc), start(N + 1, 0.0, alloc), rect(N + 1, 0.0, alloc);
    metered_vector<double> fhist(N + 1, 0.0, alloc);
    const auto kernel = PowerSumKernel::single(alpha);
    for (std::size_t m = 1; m < N; ++m) interior[m] = kernel->interior_weight(m, h);
    for (std::size_t n = 1; n <= N; ++n) start[n] = kernel->start_weight(n, h);
    const double end = kernel->end_weight(h);
    const double rscale = std::pow(h, alpha) * rgamma(alpha + 1.0);
    for (std::size_t m = 1; m <= N; ++m) rect[m] = rscale * detail::power_increment(alpha, static_cast<double>(m));

    GridFunction y;
    y.t0 = p.a;
    y.h = h;
    y.values.assign(N + 1, 0.0);
    y.values[0] = p.y0;
    fhist[0] = p.rhs(p.a, p.y0);
    for (std::size_t n = 0; n < N; ++n) {
        const std::size_t k = n + 1;
        const double t = p.a + static_cast<double>(k) * h;
        double pred = 0.0, hist = start[k] * fhist[0];
        for (std::size_t j = 0; j <= n; ++j) pred += rect[k - j] * fhist[j];
        for (std::size_t j = 1; j <= n; ++j) hist += interior[k - j] * fhist[j];
        double yk = p.y0 + pred;
        detail::guard(yk, k);
        for (int it = 0; it < c.corrector_iterations; ++it) {
            yk = p.y0 + hist + end * p.rhs(t, yk);
            detail::guard(yk, k);
        }
        y.values[k] = yk;
        fhist[k] = p.rhs(t, yk);
    }
    return y;
}

enum class Stepper { backward_euler, trapezoidal, exponential };

inline std::string to_string(Stepper s) {
    switch (s) {
        case Stepper::backward_euler: return "backward-euler";
        case Stepper::trapezoidal: return "trapezoidal";
        case Stepper::exponential: return "exponential";
    }
    return "?";
}

inline Stepper parse_stepper(const std::string& s) {
    if (s == "backward-euler") return Stepper::backward_euler;
    if (s == "trapezoidal") return Stepper::trapezoidal;
    if (s == "exponential") return Stepper::exponential;
    throw ConfigError("unknown stepper '" + s + "'");
}

/// w-quadrature and stepping options. Zero means "use the default".
struct DiffusiveConfig {
    std::size_t M = 0;            ///< total nodes; default (panels + 1) * points_per_panel
    double w_min = 0.0;           ///< default 1e-6 / T
    double w_max = 0.0;           ///< default 1e6 / h
    std::size_t panels = 0;       ///< geometric panels over [w_min, w_max]; default from ratio 10
    std::size_t points_per_panel = 8;
    Stepper stepper = Stepper::trapezoidal;
    std::size_t N = 1024;
    bool tail_correction = true;  ///< aggregate the modes above w_max analytically
};

/// h2(w) = sin(alpha pi)/pi * w^(alpha-1).
inline double h2(double alpha, double w) {
    return std::sin(alpha * std::numbers::pi) / std::numbers::pi * std::pow(w, alpha - 1.0);
}

/// Nodes w_j and weights omega_j with sum_j omega_j h2(w_j) g(w_j) ~ int_0^w_max h2(w) g(w) dw.
struct DiffusiveQuadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
    double w_min = 0, w_max = 0;
};

/// Gauss-Jacobi panel on [0, w_min] carrying the w^(alpha-1) factor, then
/// geometric panels on [w_min, w_max] with Gauss-Legendre in log w.
inline DiffusiveQuadrature diffusive_quadrature(double alpha, double w_min, double w_max, std::size_t panels,
                                                std::size_t ppp) {
    if (!(alpha > 0 && alpha < 1)) throw DomainError("diffusive: alpha must lie in (0, 1)");
    if (!(w_min > 0 && w_max > w_min)) throw ConfigError("diffusive: need 0 < w_min < w_max");
    if (panels < 1 || ppp < 1) throw ConfigError("diffusive: need at least one panel and one point");
    DiffusiveQuadrature q;
    q.w_min = w_min;
    q.w_max = w_max;
    const int n = static_cast<int>(ppp);
    const auto gj = quad::gauss_jacobi(n, 0.0, alpha - 1.0);
    const double half = 0.5 * w_min;
    for (int i = 0; i < n; ++i) {
        const double w = half * (1.0 + gj.nodes[i]);
        q.nodes.push_back(w);
        q.weights.push_back(gj.weights[i] * std::pow(half, alpha) / std::pow(w, alpha - 1.0));
    }
    const auto gl = quad::gauss_legendre(n);
    const double lo = std::log(w_min), hi = std::log(w_max);
    const double du = (hi - lo) / static_cast<double>(panels);
    for (std::size_t k = 0; k < panels; ++k) {
        const double a = lo + k * du;
        for (int i = 0; i < n; ++i) {
            const double u = a + 0.5 * du * (1.0 + gl.nodes[i]);
            const double w = std::exp(u);
            q.nodes.push_back(w);
            q.weights.push_back(gl.weights[i] * 0.5 * du * w);
        }
    }
    for (std::size_t j = 1; j < q.nodes.size(); ++j)
        if (!(q.nodes[j] > q.nodes[j - 1]))
            throw ConfigError("diffusive: quadrature nodes are not strictly increasing");
    return q;
}

/// Max relative error of sum_j omega_j h2(w_j) e^(-w_j t) against t^-alpha / Gamma(1-alpha).
inline double laplace_identity_error(double alpha, const DiffusiveQuadrature& q, const std::vector<double>& ts) {
    double worst = 0.0;
    for (double t : ts) {
        double s = 0.0;
        for (std::size_t j = 0; j < q.nodes.size(); ++j)
            s += q.weights[j] * h2(alpha, q.nodes[j]) * std::exp(-q.nodes[j] * t);
        const double exact = std::pow(t, -alpha) * rgamma(1.0 - alpha);
        worst = std::max(worst, std::abs(s - exact) / exact);
    }
    return worst;
}

/// phi_{n+1} = r phi_n + c (y_{n+1} - y_n) for one mode; returns {r, c}.
inline std::pair<double, double> stepper_coefficients(Stepper s, double w, double h, double h2w) {
    const double z = w * h;
    switch (s) {
        case Stepper::backward_euler: return {1.0 / (1.0 + z), h2w / (1.0 + z)};
        case Stepper::trapezoidal: return {(1.0 - 0.5 * z) / (1.0 + 0.5 * z), h2w / (1.0 + 0.5 * z)};
        case Stepper::exponential: {
            const double e = -std::expm1(-z);
            return {std::exp(-z), h2w * (z > 0 ? e / z : 1.0)};
        }
    }
    return {0.0, 0.0};
}

/// Amplification factor of the zero-input mode equation phi' = -w phi.
inline double amplification(Stepper s, double w, double h) { return stepper_coefficients(s, w, h, 0.0).first; }

/// Infinite-state solver state: O(M) memory, independent of the number of steps.
struct DiffusiveState {
    double alpha = 0.5;
    Stepper stepper = Stepper::trapezoidal;
    metered_vector<double> nodes, weights, phi;
    double tail_phi = 0.0;
    double w_max = 0.0;
    bool tail_correction = true;
    double t_current = 0.0;
    double y_current = 0.0;
    std::size_t step_index = 0;
    // Cached per-step coefficients for the step size `cached_h`.
    double cached_h = 0.0;
    metered_vector<double> rate, gain;
    double tail_rate = 0.0, tail_gain = 0.0, coupling = 0.0;
};

namespace detail {

inline DiffusiveConfig resolve(const FodeProblem& p, DiffusiveConfig c) {
    if (c.N < 1) throw ConfigError("diffusive: need N >= 1");
    const double h = p.T / static_cast<double>(c.N);
    if (c.w_min == 0.0) c.w_min = 1e-6 / p.T;
    if (c.w_max == 0.0) c.w_max = 1e6 / h;
    if (!(c.w_min > 0 && c.w_max > c.w_min)) throw ConfigError("diffusive: need 0 < w_min < w_max");
    if (c.points_per_panel < 1) throw ConfigError("diffusive: need points_per_panel >= 1");
    if (c.M != 0) {
        if (c.M < 4) throw ConfigError("diffusive: need M >= 4");
        if (c.panels == 0) {
            if (c.M % c.points_per_panel != 0 || c.M / c.points_per_panel < 2)
                throw ConfigError("diffusive: M must be a multiple of points_per_panel, at least twice");
            c.panels = c.M / c.points_per_panel - 1;
        } else if (c.M != (c.panels + 1) * c.points_per_panel) {
            throw ConfigError("diffusive: M must equal (panels + 1) * points_per_panel");
        }
    } else {
        if (c.panels == 0)
            c.panels = static_cast<std::size_t>(std::ceil(std::log10(c.w_max / c.w_min) - 1e-9));
        c.M = (c.panels + 1) * c.points_per_panel;
    }
    return c;
}

inline void prepare(DiffusiveState& s, double h) {
    if (s.cached_h == h) return;
    s.coupling = 0.0;
    for (std::size_t j = 0; j < s.nodes.size(); ++j) {
        auto [r, c] = stepper_coefficients(s.stepper, s.nodes[j], h, h2(s.alpha, s.nodes[j]));
        s.rate[j] = r;
        s.gain[j] = s.weights[j] * c;
        s.coupling += s.gain[j];
    }
    s.tail_rate = s.tail_gain = 0.0;
    if (s.tail_correction) {
        // Modes above w_max relax within one step: c ~ h2(w)/(w h) (times 2 for trapezoidal).
        const double integral = std::sin(s.alpha * std::numbers::pi) / std::numbers::pi *
                                std::pow(s.w_max, s.alpha - 1.0) / ((1.0 - s.alpha) * h);
        s.tail_rate = s.stepper == Stepper::trapezoidal ? -1.0 : 0.0;
        s.tail_gain = s.stepper == Stepper::trapezoidal ? 2.0 * integral : integral;
        s.coupling += s.tail_gain;
    }
    s.cached_h = h;
}

/// Solves f(t, y) = A + B (y - y_prev) for y: damped fixed point, then Newton.
inline double solve_coupling(const Rhs& f, double t, double A, double B, double y_prev, std::size_t step) {
    auto phi_map = [&](double y) { return y_prev + (f(t, y) - A) / B; };
    auto residual = [&](double y) { return f(t, y) - A - B * (y - y_prev); };
    const double tol = 1e-12;
    double y = y_prev;
    for (int it = 0; it < 50; ++it) {
        const double next = phi_map(y);
        if (!std::isfinite(next)) break;
        const double diff = next - y;
        y += 0.5 * diff;
        if (std::abs(diff) <= tol * std::max(1.0, std::abs(y))) return y;
    }
    y = y_prev;
    double r = residual(y);
    for (int it = 0; it < 50; ++it) {
        const double d = 1e-7 * std::max(1.0, std::abs(y));
        const double slope = (residual(y + d) - r) / d;
        if (slope == 0.0 || !std::isfinite(slope)) break;
        const double dy = -r / slope;
        y += dy;
        r = residual(y);
        if (std::abs(dy) <= tol * std::max(1.0, std::abs(y))) return y;
    }
    throw SolveError("diffusive: nonlinear step solve failed at step " + std::to_string(step), std::abs(r));
}

}  // namespace detail

/// Builds the quadrature and zero states. Requires 0 < alpha < 1.
inline DiffusiveState diffusive_init(const FodeProblem& p, const DiffusiveConfig& config,
                                     MemoryMeter* meter = nullptr) {
    p.validate();
    if (!(p.alpha < 1.0)) throw DomainError("diffusive: alpha must lie in (0, 1); use solve_adams for alpha = 1");
    const auto c = detail::resolve(p, config);
    const auto q = diffusive_quadrature(p.alpha, c.w_min, c.w_max, c.panels, c.points_per_panel);
    MeteredAllocator<double> alloc(meter);
    DiffusiveState s{p.alpha,
                     c.stepper,
                     metered_vector<double>(q.nodes.begin(), q.nodes.end(), alloc),
                     metered_vector<double>(q.weights.begin(), q.weights.end(), alloc),
                     metered_vector<double>(q.nodes.size(), 0.0, alloc),
                     0.0,
                     c.w_max,
                     c.tail_correction,
                     p.a,
                     p.y0,
                     0,
                     0.0,
                     metered_vector<double>(q.nodes.size(), 0.0, alloc),
                     metered_vector<double>(q.nodes.size(), 0.0, alloc)};
    return s;
}

/// Advances every mode by one step of size h and returns y at the new time.
inline double diffusive_step(DiffusiveState& s, const FodeProblem& p, double h) {
    if (!(h > 0)) throw DomainError("diffusive_step: h must be positive");
    detail::prepare(s, h);
    double A = s.tail_rate * s.tail_phi * (s.tail_gain == 0.0 ? 0.0 : 1.0);
    for (std::size_t j = 0; j < s.nodes.size(); ++j) A += s.weights[j] * s.rate[j] * s.phi[j];
    const double t_next = s.t_current + h;
    const std::size_t step = s.step_index + 1;
    const double y_next = detail::solve_coupling(p.rhs, t_next, A, s.coupling, s.y_current, step);
    detail::guard(y_next, step);
    const double dy = y_next - s.y_current;
    for (std::size_t j = 0; j < s.nodes.size(); ++j)
        s.phi[j] = s.rate[j] * s.phi[j] + s.gain[j] / s.weights[j] * dy;
    s.tail_phi = s.tail_rate * s.tail_phi + s.tail_gain * dy;
    s.t_current = t_next;
    s.y_current = y_next;
    s.step_index = step;
    return y_next;
}

/// Runs diffusive_step N times on [a, a+T].
inline GridFunction solve_diffusive(const FodeProblem& p, const DiffusiveConfig& c, MemoryMeter* meter = nullptr) {
    auto s = diffusive_init(p, c, meter);
    const double h = p.T / static_cast<double>(c.N);
    GridFunction y;
    y.t0 = p.a;
    y.h = h;
    y.values.assign(c.N + 1, 0.0);
    y.values[0] = p.y0;
    for (std::size_t n = 1; n <= c.N; ++n) {
        diffusive_step(s, p, h);
        // Re-anchor time to the grid to avoid accumulated drift in t.
        s.t_current = p.a + static_cast<double>(n) * h;
        y.values[n] = s.y_current;
    }
    return y;
}

/// One benchmark cell.
struct BenchRow {
    std::string solver;
    std::size_t N = 0;
    double seconds = 0.0;
    std::size_t peak_aux_bytes = 0;
};

struct BenchOptions {
    int repeats = 5;
    std::size_t M = 120;
    int jobs = 1;
};

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("slope: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Times `solver` ("adams" or "diffusive") over increasing step counts.
///
/// Each cell reports the fastest of `repeats` runs (monotonic clock) and the
/// peak bytes of solver-internal buffers. Cells may run on up to `jobs` threads.
inline std::vector<BenchRow> complexity_bench(const std::string& solver, const FodeProblem& p,
                                              const std::vector<std::size_t>& Ns, const BenchOptions& o = {}) {
    if (Ns.size() < 4) throw ConfigError("bench: need at least four step counts");
    for (std::size_t i = 1; i < Ns.size(); ++i)
        if (!(Ns[i] > Ns[i - 1])) throw ConfigError("bench: step counts must increase");
    if (solver != "adams" && solver != "diffusive") throw ConfigError("bench: unknown solver '" + solver + "'");
    auto cell = [&, solver](std::size_t N) {
        BenchRow row{solver, N, 1e300, 0};
        for (int r = 0; r < std::max(1, o.repeats); ++r) {
            MemoryMeter meter;
            const auto t0 = std::chrono::steady_clock::now();
            if (solver == "adams") {
                solve_adams(p, {N, 1}, &meter);
            } else {
                DiffusiveConfig c;
                c.N = N;
                c.M = o.M;
                solve_diffusive(p, c, &meter);
            }
            const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            row.seconds = std::min(row.seconds, dt);
            row.peak_aux_bytes = meter.peak;
        }
        return row;
    };
    std::vector<BenchRow> rows(Ns.size());
    const std::size_t jobs = static_cast<std::size_t>(std::max(1, o.jobs));
    for (std::size_t first = 0; first < Ns.size(); first += jobs) {
        std::vector<std::future<BenchRow>> futures;
        for (std::size_t i = first; i < std::min(Ns.size(), first + jobs); ++i)
            futures.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async, cell, Ns[i]));
        for (std::size_t i = 0; i < futures.size(); ++i) rows[first + i] = futures[i].get();
    }
    return rows;
}

}  // namespace fraclab::ivp
