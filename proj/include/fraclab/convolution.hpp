#pragma once

#include <cstddef>
#include <vector>

#include "fraclab/errors.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/kernels.hpp"

namespace fraclab {

/// Product-trapezoid weights of a kernel on a uniform grid.
///
/// (kappa * f)(t_n) ~= start[n] f_0 + sum_{j=1}^{n-1} interior[n-j] f_j + end f_n,
/// exact when f is piecewise linear between the nodes.
class ProductTrapezoid {
public:
    ProductTrapezoid(const Kernel& kernel, double h, std::size_t steps) : h_(h) {
        if (!(h > 0)) throw DomainError("convolution: step must be positive");
        if (static_cast<double>(steps) * h > kernel.horizon() * (1.0 + 1e-12))
            throw DomainError("convolution: grid extends past the kernel table (" +
                              kernel.describe() + ")");
        interior_.assign(steps + 1, 0.0);
        start_.assign(steps + 1, 0.0);
        for (std::size_t m = 1; m < steps; ++m) interior_[m] = kernel.interior_weight(m, h);
        for (std::size_t n = 1; n <= steps; ++n) start_[n] = kernel.start_weight(n, h);
        end_ = kernel.end_weight(h);
    }

    std::size_t steps() const { return start_.size() - 1; }
    double step() const { return h_; }
    double interior(std::size_t m) const { return interior_[m]; }
    double start(std::size_t n) const { return start_[n]; }
    double end() const { return end_; }

    /// Weight of sample j in the value at sample n (0 <= j <= n).
    double weight(std::size_t n, std::size_t j) const {
        if (n == 0) return 0.0;
        if (j == n) return end_;
        if (j == 0) return start_[n];
        return interior_[n - j];
    }

    /// History part of the convolution at sample n: every term except the f_n one.
    double history(const double* f, std::size_t n) const {
        if (n == 0) return 0.0;
        double s = start_[n] * f[0];
        for (std::size_t j = 1; j < n; ++j) s += interior_[n - j] * f[j];
        return s;
    }

    /// Convolution at every sample of a vector of length steps()+1 or shorter.
    std::vector<double> apply(const std::vector<double>& f) const {
        if (f.size() > start_.size()) throw DomainError("convolution: input longer than weight table");
        std::vector<double> out(f.size(), 0.0);
        for (std::size_t n = 1; n < f.size(); ++n) out[n] = history(f.data(), n) + end_ * f[n];
        return out;
    }

    /// Solves the first-kind equation (kappa * x)(t_n) = g_n for x_1..x_N given x_0.
    std::vector<double> solve_first_kind(const std::vector<double>& g, double x0) const {
        std::vector<double> x(g.size(), 0.0);
        x[0] = x0;
        for (std::size_t n = 1; n < g.size(); ++n) x[n] = (g[n] - history(x.data(), n)) / end_;
        return x;
    }

private:
    double h_;
    std::vector<double> interior_, start_;
    double end_ = 0.0;
};

/// Product-trapezoid convolution of a kernel with a grid function (relative to f.t0).
inline GridFunction convolve(const Kernel& kernel, const GridFunction& f) {
    f.validate();
    ProductTrapezoid pt(kernel, f.h, f.steps());
    GridFunction g = f.zeros_like();
    g.values = pt.apply(f.values);
    g.unreliable_prefix = f.unreliable_prefix;
    return g;
}

}  // namespace fraclab
