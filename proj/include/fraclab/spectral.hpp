#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fraclab/errors.hpp"
#include "fraclab/gauss.hpp"
#include "fraclab/quadrature.hpp"
#include "fraclab/specfun.hpp"

/// Polyfractonomial Petrov-Galerkin solver for D^alpha y = f(t) on [-1, 1], y(-1) = y0.
namespace fraclab::spectral {

enum class BasisKind { trial, test };

struct PolyfractonomialBasis {
    double alpha = 0.5;
    int N = 16;
    BasisKind kind = BasisKind::trial;

    void validate() const {
        if (!(alpha > 0 && alpha < 1)) throw DomainError("spectral: alpha must lie in (0, 1)");
        if (N < 1) throw DomainError("spectral: need N >= 1");
    }
};

struct SpectralSolution {
    double alpha = 0.5;
    double y0 = 0.0;
    std::vector<double> coefficients;
};

namespace detail {

inline void check_t(double t) {
    if (!(t >= -1.0 && t <= 1.0)) throw DomainError("spectral: t outside [-1, 1]");
}

inline int rule_size(int N) { return 2 * N + 16; }

}  // namespace detail

/// (1+t)^(alpha/2) P_{n-1}^(-alpha/2, alpha/2)(t).
inline double trial_eval(double alpha, int n, double t) {
    detail::check_t(t);
    if (n < 1) throw DomainError("spectral: basis index starts at 1");
    const double h = 0.5 * alpha;
    return std::pow(1.0 + t, h) * jacobi_poly(n - 1, -h, h, t);
}

/// (1-t)^(alpha/2) P_{n-1}^(alpha/2, -alpha/2)(t).
inline double test_eval(double alpha, int n, double t) {
    detail::check_t(t);
    if (n < 1) throw DomainError("spectral: basis index starts at 1");
    const double h = 0.5 * alpha;
    return std::pow(1.0 - t, h) * jacobi_poly(n - 1, h, -h, t);
}

inline double eval(const PolyfractonomialBasis& b, int n, double t) {
    b.validate();
    if (n > b.N) throw DomainError("spectral: basis index exceeds N");
    return b.kind == BasisKind::trial ? trial_eval(b.alpha, n, t) : test_eval(b.alpha, n, t);
}

/// Caputo derivative of order alpha of the trial functions at t in (-1, 1].
///
/// Integrates the Caputo definition directly: the derivative of the trial
/// function splits into (1+s)^(alpha/2-1) and (1+s)^(alpha/2) parts, each
/// handled by a Gauss-Jacobi rule carrying the kernel and endpoint powers.
class TrialDerivative {
public:
    TrialDerivative(double alpha, int N)
        : alpha_(alpha),
          N_(N),
          lower_(quad::gauss_jacobi(detail::rule_size(N), -alpha, 0.5 * alpha - 1.0)),
          upper_(quad::gauss_jacobi(detail::rule_size(N), -alpha, 0.5 * alpha)) {}

    /// Values for n = 1..N at t; requires t > -1.
    std::vector<double> operator()(double t) const {
        if (!(t > -1.0 && t <= 1.0)) throw DomainError("spectral: derivative needs t in (-1, 1]");
        const double h = 0.5 * alpha_;
        const double half = 0.5 * (t + 1.0);
        const double c1 = h * std::pow(half, -h);
        const double c2 = std::pow(half, 1.0 - h);
        const double scale = rgamma(1.0 - alpha_);
        std::vector<double> out(N_, 0.0);
        for (int n = 1; n <= N_; ++n) {
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t i = 0; i < lower_.nodes.size(); ++i) {
                const double s = -1.0 + half * (1.0 + lower_.nodes[i]);
                s1 += lower_.weights[i] * jacobi_poly(n - 1, -h, h, s);
            }
            if (n > 1) {
                for (std::size_t i = 0; i < upper_.nodes.size(); ++i) {
                    const double s = -1.0 + half * (1.0 + upper_.nodes[i]);
                    s2 += upper_.weights[i] * jacobi_poly_derivative(n - 1, -h, h, s);
                }
            }
            out[n - 1] = scale * (c1 * s1 + c2 * s2);
        }
        return out;
    }

private:
    double alpha_;
    int N_;
    quad::Rule lower_, upper_;
};

struct System {
    Eigen::MatrixXd S;
    Eigen::VectorXd b;
    double off_diagonal_ratio = 0.0;
};

inline constexpr double diagonality_tolerance = 1e-8;

/// Largest |S_mn| / |S_nn| over m != n.
inline double off_diagonal_ratio(const Eigen::MatrixXd& S) {
    double worst = 0.0;
    for (Eigen::Index n = 0; n < S.cols(); ++n)
        for (Eigen::Index m = 0; m < S.rows(); ++m)
            if (m != n) worst = std::max(worst, std::abs(S(m, n)) / std::abs(S(n, n)));
    return worst;
}

/// Stiffness S_mn = <D^alpha P1_n, P2_m> by Gauss-Jacobi with weight
/// (1-t)^(alpha/2) (1+t)^(-alpha/2); load b_m = <f, P2_m> by tanh-sinh.
inline Eigen::MatrixXd stiffness(double alpha, int N) {
    PolyfractonomialBasis{alpha, N}.validate();
    const double h = 0.5 * alpha;
    const auto outer = quad::gauss_jacobi(detail::rule_size(N), h, -h);
    const TrialDerivative D(alpha, N);
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(N, N);
    for (std::size_t k = 0; k < outer.nodes.size(); ++k) {
        const double t = outer.nodes[k];
        const auto d = D(t);
        const double lift = std::pow(1.0 + t, h);
        for (int m = 1; m <= N; ++m) {
            const double test = outer.weights[k] * jacobi_poly(m - 1, h, -h, t);
            for (int n = 1; n <= N; ++n) S(m - 1, n - 1) += test * lift * d[n - 1];
        }
    }
    return S;
}

inline Eigen::VectorXd load(double alpha, int N, const std::function<double(double)>& f) {
    PolyfractonomialBasis{alpha, N}.validate();
    auto v = quad::tanh_sinh(
        [&](double t, double* out) {
            const double ft = f(t);
            for (int m = 1; m <= N; ++m) out[m - 1] = ft * test_eval(alpha, m, t);
        },
        -1.0, 1.0, static_cast<std::size_t>(N), 1e-14, 12);
    return Eigen::Map<Eigen::VectorXd>(v.data(), N);
}

/// Assembles S and b; throws DiagonalityError if S is not diagonal to 1e-8.
inline System assemble_system(double alpha, int N, const std::function<double(double)>& f) {
    System sys{stiffness(alpha, N), load(alpha, N, f), 0.0};
    sys.off_diagonal_ratio = off_diagonal_ratio(sys.S);
    if (!(sys.off_diagonal_ratio <= diagonality_tolerance))
        throw DiagonalityError("spectral: stiffness matrix is not diagonal", sys.off_diagonal_ratio);
    return sys;
}

/// c_n = b_n / S_nn.
inline SpectralSolution solve_model_problem(double alpha, const std::function<double(double)>& f, double y0, int N) {
    const auto sys = assemble_system(alpha, N, f);
    const double scale = sys.S.diagonal().cwiseAbs().maxCoeff();
    SpectralSolution sol{alpha, y0, std::vector<double>(N)};
    for (int n = 0; n < N; ++n) {
        const double d = sys.S(n, n);
        if (!(std::abs(d) > 1e-12 * scale))
            throw Error(Error::Kind::numerical, "singular_diagonal",
                        "spectral: diagonal entry " + std::to_string(n + 1) + " is numerically zero");
        sol.coefficients[n] = sys.b(n) / d;
    }
    return sol;
}

/// y0 + sum_n c_n P1_n(t).
inline double evaluate_solution(const SpectralSolution& sol, double t) {
    detail::check_t(t);
    double y = sol.y0;
    for (std::size_t n = 0; n < sol.coefficients.size(); ++n)
        if (sol.coefficients[n] != 0.0) y += sol.coefficients[n] * trial_eval(sol.alpha, static_cast<int>(n) + 1, t);
    return y;
}

/// max_m |<D^alpha Y - f, P2_m>| relative to max_m |<f, P2_m>|, recomputed by tanh-sinh.
inline double residual_orthogonality(const SpectralSolution& sol, const std::function<double(double)>& f) {
    const int N = static_cast<int>(sol.coefficients.size());
    const TrialDerivative D(sol.alpha, N);
    std::vector<double> res(N, 0.0), ref(N, 0.0);
    auto both = quad::tanh_sinh(
        [&](double t, double* out) {
            const auto d = D(t);
            double dy = 0.0;
            for (int n = 0; n < N; ++n) dy += sol.coefficients[n] * d[n];
            const double ft = f(t);
            for (int m = 1; m <= N; ++m) {
                const double w = test_eval(sol.alpha, m, t);
                out[m - 1] = (dy - ft) * w;
                out[N + m - 1] = ft * w;
            }
        },
        -1.0, 1.0, static_cast<std::size_t>(2 * N), 1e-13, 10);
    double num = 0.0, den = 0.0;
    for (int m = 0; m < N; ++m) {
        num = std::max(num, std::abs(both[m]));
        den = std::max(den, std::abs(both[N + m]));
    }
    return den > 0 ? num / den : num;
}

}  // namespace fraclab::spectral
