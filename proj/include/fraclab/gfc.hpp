#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "fraclab/convolution.hpp"
#include "fraclab/errors.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/kernels.hpp"
#include "fraclab/quadrature.hpp"
#include "fraclab/specfun.hpp"

/// General fractional calculus with Sonine kernel pairs.
namespace fraclab::gfc {

/// Kernel pair with (kappa * k)(t) = t^(n-1)/(n-1)!.
struct SonineKernelPair {
    KernelPtr kappa;
    KernelPtr k;
    int n = 1;
    std::string label;
    double residual = 0.0;  ///< validation residual measured at construction
};

/// sum_i a_i h_{1-alpha_i} with strictly increasing orders in (0, 1).
struct MultiTermSpec {
    std::vector<double> coefficients;
    std::vector<double> orders;
};

/// Distributed-order measure discretized as nodes and nonnegative weights.
struct DistributedOrderSpec {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gamma probability density with shape a and rate lambda.
struct GammaLagKernel {
    double shape;
    double rate;
};

/// Controls tabulation and validation of numerically constructed pairs.
struct PairOptions {
    double horizon = 1.0;       ///< kernels are tabulated on [0, horizon]
    std::size_t steps = 4096;   ///< table resolution
    double tolerance = 1e-6;    ///< accepted Sonine residual
    double conditioning = 1e-8; ///< minimum leading weight relative to its all-positive value
    std::size_t max_head_terms = 400;
};

/// Associated kernel of the gamma density, lambda^-a e^(-lambda t) h_{1-a}(t) + P(1-a, lambda t).
class GammaAssociatedKernel : public Kernel {
public:
    GammaAssociatedKernel(double shape, double rate) : a_(shape), lambda_(rate) {
        if (!(shape > 0 && shape < 1) || !(rate > 0))
            throw DomainError("gamma associated kernel: need 0 < a < 1 and rate > 0");
    }
    double value(double t) const override {
        if (!(t > 0)) throw DomainError("kernel: t must be positive");
        const double b = 1.0 - a_;
        return std::exp(-a_ * std::log(lambda_) - lambda_ * t - a_ * std::log(t) - log_gamma(b)) +
               gamma_p(b, lambda_ * t);
    }
    double moment1(double t) const override {
        if (t <= 0) return 0.0;
        const double b = 1.0 - a_;
        return gamma_p(b, lambda_ * t) / lambda_ + q1(b, t);
    }
    double moment2(double t) const override {
        if (t <= 0) return 0.0;
        const double b = 1.0 - a_;
        return q1(b, t) / lambda_ + q2(b, t);
    }
    double leading_exponent() const override { return -a_; }
    std::string describe() const override {
        return "gamma_assoc(a=" + std::to_string(a_) + ", lambda=" + std::to_string(lambda_) + ")";
    }

private:
    /// int_0^t P(b, lambda s) ds
    double q1(double b, double t) const {
        const double x = lambda_ * t;
        return t * gamma_p(b, x) - b / lambda_ * gamma_p(b + 1.0, x);
    }
    /// int_0^t q1(b, s) ds
    double q2(double b, double t) const {
        const double x = lambda_ * t;
        const double s_p = 0.5 * t * t * gamma_p(b, x) -
                           0.5 * b * (b + 1.0) / (lambda_ * lambda_) * gamma_p(b + 2.0, x);
        return s_p - b / lambda_ * q1(b + 1.0, t);
    }
    double a_, lambda_;
};

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Direct quadrature of int_0^t a(t-s) b(s) ds with both endpoint singularities removed.
inline double direct_convolution(const Kernel& a, const Kernel& b, double t, double rel_tol = 1e-12) {
    auto part = [&](const Kernel& near, const Kernel& far, double lo_exp) {
        // s = (t/2) w^q with q = 1/(1+p) flattens near(s) ~ s^p.
        const double q = 1.0 / (1.0 + std::min(lo_exp, 0.0));
        const double c = 0.5 * t;
        auto integrand = [&](double w) {
            if (w <= 0) return 0.0;
            const double s = c * std::pow(w, q);
            if (!(s > 0) || s >= t) return 0.0;
            return near.value(s) * far.value(t - s) * c * q * std::pow(w, q - 1.0);
        };
        return quad::gauss_kronrod(integrand, 0.0, 1.0, rel_tol, 0.0, 2000).value;
    };
    return part(b, a, b.leading_exponent()) + part(a, b, a.leading_exponent());
}

inline const PowerSumKernel* as_power(const KernelPtr& k) {
    return dynamic_cast<const PowerSumKernel*>(k.get());
}
inline const TabulatedKernel* as_table(const KernelPtr& k) {
    return dynamic_cast<const TabulatedKernel*>(k.get());
}

inline double power_sum_at(const std::vector<PowerTerm>& terms, double t) {
    double s = 0.0;
    for (const auto& term : terms) s += term.coef * power_kernel(term.beta, t);
    return s;
}

}  // namespace detail

/// (kappa * k)(t_i) for t_i = i*h, i = 1..count.
///
/// Power sums convolve in closed form. A tabulated remainder is convolved by
/// product trapezoid on the requested grid, which is exact when h divides the
/// table step. Other combinations fall back to direct adaptive quadrature.
inline std::vector<double> pair_convolution(const KernelPtr& kappa, const KernelPtr& k, double h,
                                            std::size_t count) {
    std::vector<double> out(count + 1, 0.0);
    const auto* kp = detail::as_power(k);
    const auto* pp = detail::as_power(kappa);
    const auto* tab = detail::as_table(kappa);
    if (pp && kp) {
        const auto terms = simplify_terms(pp->convolve(*kp), 0.0);
        for (std::size_t i = 1; i <= count; ++i) out[i] = detail::power_sum_at(terms, i * h);
        return out;
    }
    if (tab && (kp || !tab->head())) {
        std::vector<double> tail(count + 1);
        for (std::size_t i = 0; i <= count; ++i) tail[i] = tab->tail_value(i * h);
        ProductTrapezoid pt(*k, h, count);
        out = pt.apply(tail);
        if (tab->head()) {
            const auto terms = simplify_terms(tab->head()->convolve(*kp), 0.0);
            for (std::size_t i = 1; i <= count; ++i) out[i] += detail::power_sum_at(terms, i * h);
        }
        return out;
    }
    for (std::size_t i = 1; i <= count; ++i) out[i] = detail::direct_convolution(*kappa, *k, i * h);
    return out;
}

/// max_i |(kappa * k)(t_i) - t_i^(n-1)/(n-1)!| over t_i = i*h, i = 1..count.
inline double sonine_residual(const SonineKernelPair& pair, double h, std::size_t count) {
    if (!(h > 0) || count == 0) throw DomainError("sonine_residual: need h > 0 and count >= 1");
    const auto conv = pair_convolution(pair.kappa, pair.k, h, count);
    double worst = 0.0;
    const double fact = detail::factorial(pair.n - 1);
    for (std::size_t i = 1; i <= count; ++i) {
        const double t = i * h;
        worst = std::max(worst, std::abs(conv[i] - std::pow(t, pair.n - 1) / fact));
    }
    return worst;
}

/// Residual over explicit abscissae (all > 0), by direct quadrature unless both kernels are power sums.
inline double sonine_residual(const SonineKernelPair& pair, const std::vector<double>& abscissae) {
    const double fact = detail::factorial(pair.n - 1);
    const auto* kp = detail::as_power(pair.k);
    const auto* pp = detail::as_power(pair.kappa);
    double worst = 0.0;
    for (double t : abscissae) {
        if (!(t > 0)) throw DomainError("sonine_residual: abscissae must avoid t = 0");
        const double conv = (pp && kp) ? detail::power_sum_at(pp->convolve(*kp), t)
                                       : detail::direct_convolution(*pair.kappa, *pair.k, t);
        worst = std::max(worst, std::abs(conv - std::pow(t, pair.n - 1) / fact));
    }
    return worst;
}

/// Power pair (h_alpha, h_{1-alpha}).
inline SonineKernelPair make_power_pair(double alpha) {
    if (!(alpha > 0 && alpha < 1)) throw DomainError("make_power_pair: alpha must lie in (0, 1)");
    SonineKernelPair p;
    p.kappa = PowerSumKernel::single(alpha);
    p.k = PowerSumKernel::single(1.0 - alpha);
    p.n = 1;
    p.label = "power(" + format_double(alpha) + ")";
    p.residual = sonine_residual(p, 1.0 / 64, 64);
    return p;
}

/// Multi-term pair: k = sum a_i h_{1-alpha_i}, kappa from Volterra deconvolution of k * kappa = 1.
///
/// kappa is split into an analytic head (the Laplace-domain expansion of
/// 1/(sum a_i p^alpha_i) truncated below t^2 behaviour) and a smooth remainder
/// obtained by product-trapezoid forward substitution and stored piecewise linear.
inline SonineKernelPair make_multiterm_pair(const MultiTermSpec& spec, const PairOptions& opt = {}) {
    if (spec.coefficients.size() != spec.orders.size() || spec.orders.empty())
        throw DomainError("multi-term: coefficient and order lists must be nonempty and equal length");
    std::vector<double> a, al;
    for (std::size_t i = 0; i < spec.orders.size(); ++i) {
        const double o = spec.orders[i];
        if (!(o > 0 && o < 1)) throw DomainError("multi-term: orders must lie in (0, 1)");
        if (i > 0 && !(o > spec.orders[i - 1])) throw DomainError("multi-term: orders must increase strictly");
        if (spec.coefficients[i] != 0.0) {
            a.push_back(spec.coefficients[i]);
            al.push_back(o);
        }
    }
    if (a.empty()) throw DomainError("multi-term: all coefficients are zero");
    if (!(a.back() > 0)) throw DomainError("multi-term: leading coefficient must be positive");
    if (!(opt.horizon > 0) || opt.steps < 8) throw ConfigError("multi-term: bad tabulation options");

    std::vector<PowerTerm> k_terms;
    for (std::size_t i = 0; i < a.size(); ++i) k_terms.push_back({a[i], 1.0 - al[i]});
    auto k = std::make_shared<const PowerSumKernel>(k_terms);

    const std::size_t m = a.size() - 1;
    const double am = a[m], alm = al[m];
    if (m == 0) {
        SonineKernelPair p;
        p.kappa = PowerSumKernel::single(alm, 1.0 / am);
        p.k = k;
        p.label = "multi(" + k->describe() + ")";
        p.residual = sonine_residual(p, opt.horizon / 64, 64);
        return p;
    }

    // Head: (1/a_m) p^-alpha_m sum_j (-sum_{i<m} b_i p^-d_i)^j, kept while alpha_m + e < 3.
    const double cutoff = 3.0;
    std::map<double, double> level{{0.0, 1.0}}, head;
    std::size_t produced = 0;
    while (!level.empty() && produced < opt.max_head_terms) {
        std::map<double, double> next;
        for (auto [e, c] : level) {
            head[e] += c;
            ++produced;
            for (std::size_t i = 0; i < m; ++i) {
                const double e2 = e + (alm - al[i]);
                if (alm + e2 < cutoff) next[e2] += -c * a[i] / am;
            }
        }
        level = std::move(next);
    }
    std::vector<PowerTerm> head_terms;
    for (auto [e, c] : head) head_terms.push_back({c / am, alm + e});
    head_terms = simplify_terms(head_terms);
    auto head_kernel = std::make_shared<const PowerSumKernel>(head_terms);

    // Right-hand side 1 - (k * head), an explicit power sum.
    auto rhs_terms = head_kernel->convolve(*k);
    for (auto& t : rhs_terms) t.coef = -t.coef;
    rhs_terms.push_back({1.0, 1.0});
    rhs_terms = simplify_terms(rhs_terms, 1e-12);

    const double h = opt.horizon / static_cast<double>(opt.steps);
    ProductTrapezoid pt(*k, h, opt.steps);
    double positive_scale = 0.0;
    for (const auto& t : k_terms) positive_scale += std::abs(t.coef) * std::pow(h, t.beta) * rgamma(t.beta + 2.0);
    if (!(pt.end() > opt.conditioning * positive_scale))
        throw InstabilityError("multi-term: leading quadrature weight " + format_double(pt.end()) +
                               " is below the conditioning threshold");
    std::vector<double> g(opt.steps + 1, 0.0);
    for (std::size_t i = 1; i <= opt.steps; ++i) g[i] = detail::power_sum_at(rhs_terms, i * h);
    auto tail = pt.solve_first_kind(g, 0.0);
    for (double v : tail)
        if (!std::isfinite(v)) throw InstabilityError("multi-term: deconvolution produced non-finite values");

    SonineKernelPair p;
    p.label = "multi(" + k->describe() + ")";
    p.kappa = std::make_shared<const TabulatedKernel>(head_kernel, h, std::move(tail), "kappa[" + p.label + "]");
    p.k = k;
    p.n = 1;
    p.residual = sonine_residual(p, 0.5 * h, 2 * opt.steps);
    if (!(p.residual <= opt.tolerance))
        throw InstabilityError("multi-term: Sonine residual " + format_double(p.residual) +
                               " exceeds tolerance " + format_double(opt.tolerance));
    return p;
}

/// Distributed order reduced to a multi-term spec (nodes sorted, equal nodes merged).
inline MultiTermSpec to_multiterm(const DistributedOrderSpec& d) {
    if (d.nodes.size() != d.weights.size() || d.nodes.empty())
        throw DomainError("distributed order: node and weight lists must be nonempty and equal length");
    std::map<double, double> merged;
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        if (!(d.nodes[i] > 0 && d.nodes[i] < 1)) throw DomainError("distributed order: nodes must lie in (0, 1)");
        if (!(d.weights[i] >= 0)) throw DomainError("distributed order: weights must be nonnegative");
        merged[d.nodes[i]] += d.weights[i];
    }
    MultiTermSpec s;
    for (auto [node, w] : merged) {
        s.orders.push_back(node);
        s.coefficients.push_back(w);
    }
    return s;
}

inline SonineKernelPair make_distributed_pair(const DistributedOrderSpec& d, const PairOptions& opt = {}) {
    return make_multiterm_pair(to_multiterm(d), opt);
}

/// Gamma density as a convolution kernel.
inline std::shared_ptr<const GammaPdfKernel> make_gamma_kernel(const GammaLagKernel& g) {
    return std::make_shared<const GammaPdfKernel>(g.shape, g.rate);
}

/// |int_0^inf k - 1| with the integral truncated where the tail drops below 1e-12.
inline double gamma_lag_normalization_error(const GammaLagKernel& g) {
    double t_end = 1.0 / g.rate;
    while (1.0 - gamma_p(g.shape, g.rate * t_end) > 1e-12) t_end *= 2.0;
    // Substitution s = t_end w^(1/a) turns the density into a smooth integrand.
    const double q = 1.0 / g.shape;
    const double scale = std::exp(g.shape * std::log(g.rate * t_end) - log_gamma(g.shape)) * q;
    auto integrand = [&](double w) { return scale * std::exp(-g.rate * t_end * std::pow(w, q)); };
    auto r = quad::gauss_kronrod(integrand, 0.0, 1.0, 1e-13, 0.0, 4000);
    return std::abs(r.value - 1.0);
}

/// Laplace convolution of the gamma density with f (no inverse pair implied).
inline GridFunction gamma_lag_convolve(const GammaLagKernel& g, const GridFunction& f) {
    return convolve(*make_gamma_kernel(g), f);
}

/// Gamma density with 0 < a < 1 and its closed-form associated kernel.
inline SonineKernelPair make_gamma_pair(const GammaLagKernel& g) {
    if (!(g.shape > 0 && g.shape < 1))
        throw DomainError("gamma pair: shape must lie in (0, 1); k(0+) is finite for shape >= 1");
    SonineKernelPair p;
    p.kappa = std::make_shared<const GammaAssociatedKernel>(g.shape, g.rate);
    p.k = make_gamma_kernel(g);
    p.n = 1;
    p.label = "gamma(" + format_double(g.shape) + "," + format_double(g.rate) + ")";
    std::vector<double> ts;
    for (int i = 1; i <= 16; ++i) ts.push_back(i / 16.0);
    p.residual = sonine_residual(p, ts);
    return p;
}

/// Class-n extension: kappa_n = h_{n-1} * kappa, k unchanged.
inline SonineKernelPair extend_to_Ln(const SonineKernelPair& pair, int n_target,
                                     const PairOptions& opt = {}) {
    if (pair.n != 1) throw DomainError("extend_to_Ln: pair must be of class 1");
    if (n_target < 2) throw DomainError("extend_to_Ln: target class must be at least 2");
    const double shift = n_target - 1.0;
    SonineKernelPair p;
    p.k = pair.k;
    p.n = n_target;
    p.label = pair.label + "^L" + std::to_string(n_target);
    if (const auto* ps = detail::as_power(pair.kappa)) {
        std::vector<PowerTerm> terms = ps->terms();
        for (auto& t : terms) t.beta += shift;
        p.kappa = std::make_shared<const PowerSumKernel>(terms);
        p.residual = sonine_residual(p, opt.horizon / 64, 64);
        return p;
    }
    auto hn = PowerSumKernel::single(shift);
    if (const auto* tab = detail::as_table(pair.kappa)) {
        std::shared_ptr<const PowerSumKernel> head;
        if (tab->head()) {
            std::vector<PowerTerm> terms = tab->head()->terms();
            for (auto& t : terms) t.beta += shift;
            head = std::make_shared<const PowerSumKernel>(terms);
        }
        const std::size_t steps = tab->tail().size() - 1;
        ProductTrapezoid pt(*hn, tab->step(), steps);
        p.kappa = std::make_shared<const TabulatedKernel>(head, tab->step(), pt.apply(tab->tail()),
                                                          "kappa[" + p.label + "]");
        p.residual = sonine_residual(p, 0.5 * tab->step(), 2 * steps);
    } else {
        // Generic kernel: h_1 * kappa and h_2 * kappa are its moments; higher classes convolve moment2.
        const double h = opt.horizon / static_cast<double>(opt.steps);
        std::vector<double> table(opt.steps + 1, 0.0);
        for (std::size_t i = 1; i <= opt.steps; ++i)
            table[i] = n_target == 2 ? pair.kappa->moment1(i * h) : pair.kappa->moment2(i * h);
        if (n_target > 3) {
            ProductTrapezoid pt(*PowerSumKernel::single(n_target - 3.0), h, opt.steps);
            table = pt.apply(table);
        }
        p.kappa = std::make_shared<const TabulatedKernel>(nullptr, h, std::move(table),
                                                          "kappa[" + p.label + "]");
        p.residual = sonine_residual(p, 0.5 * h, 2 * opt.steps);
    }
    if (!(p.residual <= opt.tolerance))
        throw InstabilityError("extend_to_Ln: residual " + format_double(p.residual) +
                               " exceeds tolerance " + format_double(opt.tolerance));
    return p;
}

/// General fractional integral kappa * f.
inline GridFunction gfi(const SonineKernelPair& pair, const GridFunction& f) {
    return convolve(*pair.kappa, f);
}

namespace detail {

inline std::size_t gfd_prefix(const SonineKernelPair& pair, const GridFunction& f) {
    if (f.values[0] == 0.0) return f.unreliable_prefix;
    const double order = std::clamp(-pair.k->leading_exponent(), 0.05, 1.0);
    return std::max({f.unreliable_prefix, std::size_t{2},
                     static_cast<std::size_t>(std::ceil(1.0 / order))});
}

}  // namespace detail

/// Riemann-Liouville type GFD: n-th derivative of (k * f).
inline GridFunction gfd_rl(const SonineKernelPair& pair, const GridFunction& f) {
    GridFunction g = convolve(*pair.k, f);
    for (int i = 0; i < pair.n; ++i) g = derivative(g);
    g.unreliable_prefix = detail::gfd_prefix(pair, f);
    return g;
}

/// Taylor data f^(j)(t0), j < count, from one-sided differences.
inline std::vector<double> taylor_data(const GridFunction& f, int count) {
    std::vector<double> d;
    GridFunction g = f;
    for (int j = 0; j < count; ++j) {
        d.push_back(g.values[0]);
        if (j + 1 < count) g = derivative(g);
    }
    return d;
}

/// Caputo type GFD: RL type GFD of f minus its degree n-1 Taylor polynomial at t0.
inline GridFunction gfd_caputo(const SonineKernelPair& pair, const GridFunction& f) {
    f.validate();
    const auto taylor = taylor_data(f, pair.n);
    GridFunction r = f;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double s = r.t(i) - r.t0;
        double poly = 0.0, term = 1.0;
        for (int j = 0; j < pair.n; ++j) {
            if (j > 0) term *= s / j;
            poly += taylor[j] * term;
        }
        r.values[i] -= poly;
    }
    r.values[0] = 0.0;
    GridFunction g = convolve(*pair.k, r);
    for (int i = 0; i < pair.n; ++i) g = derivative(g);
    g.unreliable_prefix = f.unreliable_prefix;
    return g;
}

/// Registry of validated pairs, safe for concurrent use.
class KernelRegistry {
public:
    explicit KernelRegistry(double tolerance = 1e-6) : tolerance_(tolerance) {}

    /// Validates the residual and the singularity rule, then stores the pair under its label.
    void add(const SonineKernelPair& pair) {
        if (!(pair.residual <= tolerance_))
            throw DomainError("registry: pair '" + pair.label + "' residual " +
                                  format_double(pair.residual) + " exceeds tolerance",
                              "sonine_residual");
        if (pair.n == 1 && !is_singular_at_zero(*pair.k))
            throw DomainError("registry: kernel k of '" + pair.label +
                                  "' has a finite limit at 0+ and cannot form a Sonine pair",
                              "singularity_rule");
        std::lock_guard lock(mutex_);
        pairs_[pair.label] = pair;
    }

    SonineKernelPair get(const std::string& label) const {
        std::lock_guard lock(mutex_);
        auto it = pairs_.find(label);
        if (it == pairs_.end()) throw DomainError("registry: unknown pair '" + label + "'");
        return it->second;
    }

    std::vector<std::string> labels() const {
        std::lock_guard lock(mutex_);
        std::vector<std::string> out;
        for (const auto& [k, v] : pairs_) out.push_back(k);
        return out;
    }

    /// k(t) t^0.01 must grow as t -> 0+.
    static bool is_singular_at_zero(const Kernel& k) {
        if (k.leading_exponent() >= 0.0) return false;
        double prev = 0.0;
        for (double t : {1e-3, 1e-6, 1e-9, 1e-12}) {
            const double v = k.value(t) * std::pow(t, 0.01);
            if (!(v > prev)) return false;
            prev = v;
        }
        return true;
    }

private:
    double tolerance_;
    mutable std::mutex mutex_;
    std::map<std::string, SonineKernelPair> pairs_;
};

}  // namespace fraclab::gfc
