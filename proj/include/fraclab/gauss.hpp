#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "fraclab/errors.hpp"
#include "fraclab/specfun.hpp"

namespace fraclab::quad {

/// Nodes and weights of an interpolatory rule.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1, 1].
///
/// Golub-Welsch eigen-decomposition for starting values, then Newton
/// polishing on P_n^{(a,b)} and weights from the derivative formula.
inline Rule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw DomainError("gauss_jacobi: need at least one node");
    if (!(a > -1) || !(b > -1)) throw DomainError("gauss_jacobi: parameters must exceed -1");
    const double ab = a + b;
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) {
        const double c = 2.0 * k + ab;
        diag(k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (c * (c + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double c = 2.0 * k + ab;
        double beta;
        if (k == 1) beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (c * c * (c + 1.0) * (c - 1.0));
        sub(k - 1) = std::sqrt(beta);
    }
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double log_mu0 = (ab + 1.0) * std::log(2.0) + log_gamma(a + 1.0) + log_gamma(b + 1.0) -
                           log_gamma(ab + 2.0);
    if (n == 1) {
        rule.nodes[0] = diag(0);
        rule.weights[0] = std::exp(log_mu0);
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
    // Weight constant: 2^(a+b+1) Gamma(n+a+1) Gamma(n+b+1) / (Gamma(n+a+b+1) n!).
    const double log_c = (ab + 1.0) * std::log(2.0) + log_gamma(n + a + 1.0) +
                         log_gamma(n + b + 1.0) - log_gamma(n + ab + 1.0) - log_gamma(n + 1.0);
    for (int i = 0; i < n; ++i) {
        double x = std::clamp(solver.eigenvalues()(i), -1.0, 1.0);
        for (int it = 0; it < 8; ++it) {
            const double p = jacobi_poly(n, a, b, x);
            const double dp = jacobi_poly_derivative(n, a, b, x);
            const double dx = p / dp;
            const double next = std::clamp(x - dx, -1.0, 1.0);
            x = next;
            if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
        }
        const double dp = jacobi_poly_derivative(n, a, b, x);
        rule.nodes[i] = x;
        rule.weights[i] = std::exp(log_c) / ((1.0 - x) * (1.0 + x) * dp * dp);
    }
    // Nodes next to a strongly singular endpoint carry the largest relative
    // error; rescaling to the exact zeroth moment removes its aggregate.
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    const double scale = std::exp(log_mu0) / sum;
    for (double& w : rule.weights) w *= scale;
    return rule;
}

/// n-point Gauss-Legendre rule on [lo, hi].
inline Rule gauss_legendre(int n, double lo = -1.0, double hi = 1.0) {
    Rule r = gauss_jacobi(n, 0.0, 0.0);
    const double c = 0.5 * (lo + hi), d = 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = c + d * r.nodes[i];
        r.weights[i] *= d;
    }
    return r;
}

}  // namespace fraclab::quad
