#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "fraclab/errors.hpp"
#include "fraclab/specfun.hpp"

namespace fraclab {

/// Convolution kernel on t > 0 described by its value and two antiderivatives.
///
/// moment1(t) = int_0^t kappa, moment2(t) = int_0^t moment1. Product-trapezoid
/// weights are second differences of moment2; subclasses may override the
/// weight helpers with cancellation-free forms.
class Kernel {
public:
    virtual ~Kernel() = default;

    virtual double value(double t) const = 0;
    virtual double moment1(double t) const = 0;
    virtual double moment2(double t) const = 0;
    /// p such that kappa(t) ~ t^p as t -> 0+.
    virtual double leading_exponent() const = 0;
    /// Largest t at which the kernel is defined.
    virtual double horizon() const { return std::numeric_limits<double>::infinity(); }
    virtual std::string describe() const = 0;

    /// Weight of sample j in the convolution at sample n, for m = n - j in [1, n-1].
    virtual double interior_weight(std::size_t m, double h) const {
        const double md = static_cast<double>(m);
        return (moment2((md + 1) * h) - 2.0 * moment2(md * h) + moment2((md - 1) * h)) / h;
    }
    /// Weight of the first sample in the convolution at sample n >= 1.
    virtual double start_weight(std::size_t n, double h) const {
        const double nd = static_cast<double>(n);
        return moment1(nd * h) - (moment2(nd * h) - moment2((nd - 1) * h)) / h;
    }
    /// Weight of the current sample.
    virtual double end_weight(double h) const { return moment2(h) / h; }
};

using KernelPtr = std::shared_ptr<const Kernel>;

namespace detail {

/// (m+1)^p - 2 m^p + (m-1)^p without cancellation for large m.
inline double second_difference_power(double p, double m) {
    if (m < 4.0) return std::pow(m + 1.0, p) - 2.0 * std::pow(m, p) + std::pow(m - 1.0, p);
    const double x2 = 1.0 / (m * m);
    double sum = 0.0, xk = x2, coef;
    for (int k = 1; k < 200; ++k) {
        coef = binomial(p, 2 * k);
        const double term = coef * xk;
        sum += term;
        if (coef == 0.0 || std::abs(term) <= 1e-18 * std::abs(sum)) break;
        xk *= x2;
    }
    return 2.0 * std::pow(m, p) * sum;
}

/// (n-1)^p - n^p + p n^(p-1) without cancellation for large n.
inline double start_difference_power(double p, double n) {
    if (n < 4.0) return std::pow(n - 1.0, p) - std::pow(n, p) + p * std::pow(n, p - 1.0);
    const double x = -1.0 / n;
    double sum = 0.0, xk = x;
    for (int k = 2; k < 200; ++k) {
        xk *= x;
        const double coef = binomial(p, k);
        const double term = coef * xk;
        sum += term;
        if (coef == 0.0 || std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return std::pow(n, p) * sum;
}

}  // namespace detail

/// One term c * h_beta(t) of a power sum.
struct PowerTerm {
    double coef;
    double beta;
};

/// Finite sum of power kernels, sum_i c_i h_{beta_i}(t).
class PowerSumKernel : public Kernel {
public:
    explicit PowerSumKernel(std::vector<PowerTerm> terms) {
        for (const auto& t : terms) {
            if (!(t.beta > 0)) throw DomainError("power sum: exponents must be positive");
            if (t.coef != 0.0) terms_.push_back(t);
        }
        if (terms_.empty()) throw DomainError("power sum: all coefficients are zero");
        std::sort(terms_.begin(), terms_.end(),
                  [](const PowerTerm& a, const PowerTerm& b) { return a.beta < b.beta; });
    }

    static std::shared_ptr<const PowerSumKernel> single(double beta, double coef = 1.0) {
        return std::make_shared<const PowerSumKernel>(std::vector<PowerTerm>{{coef, beta}});
    }

    const std::vector<PowerTerm>& terms() const { return terms_; }

    double value(double t) const override { return eval(t, 0.0); }
    double moment1(double t) const override { return eval(t, 1.0); }
    double moment2(double t) const override { return eval(t, 2.0); }
    double leading_exponent() const override { return terms_.front().beta - 1.0; }

    double interior_weight(std::size_t m, double h) const override {
        double w = 0.0;
        for (const auto& t : terms_)
            w += t.coef * std::pow(h, t.beta) * rgamma(t.beta + 2.0) *
                 detail::second_difference_power(t.beta + 1.0, static_cast<double>(m));
        return w;
    }
    double start_weight(std::size_t n, double h) const override {
        double w = 0.0;
        for (const auto& t : terms_)
            w += t.coef * std::pow(h, t.beta) * rgamma(t.beta + 2.0) *
                 detail::start_difference_power(t.beta + 1.0, static_cast<double>(n));
        return w;
    }
    double end_weight(double h) const override {
        double w = 0.0;
        for (const auto& t : terms_) w += t.coef * std::pow(h, t.beta) * rgamma(t.beta + 2.0);
        return w;
    }

    std::string describe() const override {
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += " + ";
            s += format(t.coef) + "*h_" + format(t.beta);
        }
        return s;
    }

    /// Convolution with another power sum, exact: h_a * h_b = h_{a+b}.
    std::vector<PowerTerm> convolve(const PowerSumKernel& other) const {
        std::vector<PowerTerm> out;
        for (const auto& a : terms_)
            for (const auto& b : other.terms_) out.push_back({a.coef * b.coef, a.beta + b.beta});
        return out;
    }

private:
    static std::string format(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", x);
        return buf;
    }

    double eval(double t, double shift) const {
        if (t < 0) throw DomainError("kernel: negative argument");
        double s = 0.0;
        for (const auto& term : terms_) {
            const double b = term.beta + shift;
            if (t == 0.0) {
                if (b < 1.0) throw DomainError("kernel: singular at t = 0");
                if (b == 1.0) s += term.coef;
                continue;
            }
            s += term.coef * (b == 1.0 ? 1.0 : std::exp((b - 1.0) * std::log(t) - log_gamma(b)));
        }
        return s;
    }

    std::vector<PowerTerm> terms_;
};

/// Merges equal exponents and drops coefficients that cancelled to rounding.
inline std::vector<PowerTerm> simplify_terms(std::vector<PowerTerm> terms, double rel_drop = 1e-13) {
    std::sort(terms.begin(), terms.end(),
              [](const PowerTerm& a, const PowerTerm& b) { return a.beta < b.beta; });
    std::vector<PowerTerm> merged;
    std::vector<double> scale;
    for (const auto& t : terms) {
        if (!merged.empty() && std::abs(merged.back().beta - t.beta) <= 1e-12 * std::max(1.0, t.beta)) {
            merged.back().coef += t.coef;
            scale.back() = std::max(scale.back(), std::abs(t.coef));
        } else {
            merged.push_back(t);
            scale.push_back(std::abs(t.coef));
        }
    }
    std::vector<PowerTerm> out;
    for (std::size_t i = 0; i < merged.size(); ++i)
        if (std::abs(merged[i].coef) > rel_drop * scale[i]) out.push_back(merged[i]);
    return out;
}

/// Power-sum head (optional) plus a piecewise-linear tabulated remainder on [0, horizon].
class TabulatedKernel : public Kernel {
public:
    TabulatedKernel(std::shared_ptr<const PowerSumKernel> head, double step, std::vector<double> tail,
                    std::string label)
        : head_(std::move(head)), step_(step), tail_(std::move(tail)), label_(std::move(label)) {
        if (!(step_ > 0) || tail_.size() < 2) throw DomainError("tabulated kernel: bad table");
        m1_.assign(tail_.size(), 0.0);
        m2_.assign(tail_.size(), 0.0);
        for (std::size_t i = 1; i < tail_.size(); ++i) {
            const double a = tail_[i - 1], b = tail_[i];
            m1_[i] = m1_[i - 1] + 0.5 * step_ * (a + b);
            m2_[i] = m2_[i - 1] + m1_[i - 1] * step_ + step_ * step_ * (a / 3.0 + b / 6.0);
        }
    }

    const std::shared_ptr<const PowerSumKernel>& head() const { return head_; }
    double step() const { return step_; }
    const std::vector<double>& tail() const { return tail_; }

    double value(double t) const override { return head_value(t) + tail_value(t); }
    double moment1(double t) const override {
        return (head_ ? head_->moment1(t) : 0.0) + tail_moment(t, 1);
    }
    double moment2(double t) const override {
        return (head_ ? head_->moment2(t) : 0.0) + tail_moment(t, 2);
    }
    double leading_exponent() const override { return head_ ? head_->leading_exponent() : 0.0; }
    double horizon() const override { return step_ * static_cast<double>(tail_.size() - 1); }
    std::string describe() const override { return label_; }

    double interior_weight(std::size_t m, double h) const override {
        const double md = static_cast<double>(m);
        return (head_ ? head_->interior_weight(m, h) : 0.0) +
               (tail_moment((md + 1) * h, 2) - 2.0 * tail_moment(md * h, 2) +
                tail_moment((md - 1) * h, 2)) / h;
    }
    double start_weight(std::size_t n, double h) const override {
        const double nd = static_cast<double>(n);
        return (head_ ? head_->start_weight(n, h) : 0.0) + tail_moment(nd * h, 1) -
               (tail_moment(nd * h, 2) - tail_moment((nd - 1) * h, 2)) / h;
    }
    double end_weight(double h) const override {
        return (head_ ? head_->end_weight(h) : 0.0) + tail_moment(h, 2) / h;
    }

    /// Value of the piecewise-linear remainder.
    double tail_value(double t) const {
        auto [i, tau] = locate(t);
        if (i + 1 >= tail_.size()) return tail_.back();
        return tail_[i] + (tail_[i + 1] - tail_[i]) * tau / step_;
    }

private:
    double head_value(double t) const { return head_ ? head_->value(t) : 0.0; }

    std::pair<std::size_t, double> locate(double t) const {
        if (t < 0) throw DomainError("kernel: negative argument");
        const double H = horizon();
        if (t > H * (1.0 + 1e-12))
            throw DomainError("kernel '" + label_ + "' is tabulated only on [0, " + std::to_string(H) + "]");
        const double x = std::min(t, H) / step_;
        std::size_t i = static_cast<std::size_t>(x);
        if (i >= tail_.size() - 1) i = tail_.size() - 2;
        return {i, std::min(t, H) - static_cast<double>(i) * step_};
    }

    double tail_moment(double t, int order) const {
        auto [i, tau] = locate(t);
        const double a = tail_[i];
        const double slope = (tail_[i + 1] - tail_[i]) / step_;
        if (order == 1) return m1_[i] + a * tau + 0.5 * slope * tau * tau;
        return m2_[i] + m1_[i] * tau + 0.5 * a * tau * tau + slope * tau * tau * tau / 6.0;
    }

    std::shared_ptr<const PowerSumKernel> head_;
    double step_;
    std::vector<double> tail_;
    std::vector<double> m1_, m2_;
    std::string label_;
};

/// Gamma probability density lambda^a t^(a-1) e^(-lambda t) / Gamma(a).
class GammaPdfKernel : public Kernel {
public:
    GammaPdfKernel(double shape, double rate) : a_(shape), lambda_(rate) {
        if (!(shape > 0) || !(rate > 0)) throw DomainError("gamma kernel: shape and rate must be positive");
    }
    double shape() const { return a_; }
    double rate() const { return lambda_; }

    double value(double t) const override {
        if (!(t > 0)) throw DomainError("gamma kernel: t must be positive");
        return std::exp(a_ * std::log(lambda_) + (a_ - 1.0) * std::log(t) - lambda_ * t - log_gamma(a_));
    }
    double moment1(double t) const override { return t <= 0 ? 0.0 : gamma_p(a_, lambda_ * t); }
    double moment2(double t) const override {
        if (t <= 0) return 0.0;
        return t * gamma_p(a_, lambda_ * t) - a_ / lambda_ * gamma_p(a_ + 1.0, lambda_ * t);
    }
    double leading_exponent() const override { return a_ - 1.0; }
    std::string describe() const override {
        return "gamma_pdf(a=" + std::to_string(a_) + ", lambda=" + std::to_string(lambda_) + ")";
    }

private:
    double a_, lambda_;
};

}  // namespace fraclab
