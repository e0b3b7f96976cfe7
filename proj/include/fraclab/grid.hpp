#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fraclab/errors.hpp"

namespace fraclab {

/// Uniformly sampled real function: values[i] = f(t0 + i*h).
///
/// `unreliable_prefix` counts leading samples that sit in a kernel
/// singularity (exact value infinite); consumers should skip them.
struct GridFunction {
    double t0 = 0.0;
    double h = 1.0;
    std::vector<double> values;
    std::size_t unreliable_prefix = 0;

    std::size_t size() const { return values.size(); }
    std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
    double t(std::size_t i) const { return t0 + static_cast<double>(i) * h; }
    double t_end() const { return t(steps()); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }

    /// Throws unless h > 0, at least two samples, all finite.
    void validate() const {
        if (!(h > 0) || !std::isfinite(h)) throw DomainError("grid: step must be positive");
        if (values.size() < 2) throw DomainError("grid: need at least two samples");
        if (!std::isfinite(t0)) throw DomainError("grid: non-finite start");
        for (double v : values)
            if (!std::isfinite(v)) throw DomainError("grid: non-finite sample");
    }

    /// Same abscissae, zero values.
    GridFunction zeros_like() const {
        GridFunction g{t0, h, std::vector<double>(values.size(), 0.0), 0};
        return g;
    }

    /// Samples f at N+1 points spanning [t_begin, t_end].
    template <class F>
    static GridFunction sample(F&& f, double t_begin, double t_end, std::size_t N) {
        if (N < 1) throw DomainError("grid: need at least one step");
        if (!(t_end > t_begin)) throw DomainError("grid: empty interval");
        GridFunction g;
        g.t0 = t_begin;
        g.h = (t_end - t_begin) / static_cast<double>(N);
        g.values.resize(N + 1);
        for (std::size_t i = 0; i <= N; ++i) g.values[i] = f(g.t(i));
        return g;
    }
};

/// a*f + b*g on a common grid.
inline GridFunction combine(double a, const GridFunction& f, double b, const GridFunction& g) {
    if (f.size() != g.size() || f.h != g.h || f.t0 != g.t0)
        throw DomainError("grid: mismatched grids");
    GridFunction r = f.zeros_like();
    for (std::size_t i = 0; i < f.size(); ++i) r.values[i] = a * f.values[i] + b * g.values[i];
    r.unreliable_prefix = std::max(f.unreliable_prefix, g.unreliable_prefix);
    return r;
}

/// First derivative: central differences inside, second-order one-sided at the ends.
inline GridFunction derivative(const GridFunction& f) {
    f.validate();
    GridFunction d = f.zeros_like();
    d.unreliable_prefix = f.unreliable_prefix;
    const auto& v = f.values;
    const std::size_t n = v.size();
    const double h = f.h;
    if (n == 2) {
        d.values[0] = d.values[1] = (v[1] - v[0]) / h;
        return d;
    }
    d.values[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d.values[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    d.values[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return d;
}

/// Formats a double with 17 significant digits.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Writes `t,<name>` CSV rows.
inline void write_csv(std::ostream& os, const GridFunction& f, const std::string& name = "value") {
    os << "t," << name << "\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        os << format_double(f.t(i)) << "," << format_double(f.values[i]) << "\n";
}

/// Reads a two-column `t,value` CSV produced by write_csv; the grid must be uniform.
inline GridFunction read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw DomainError("csv: empty input");
    std::vector<double> ts, vs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ','))
            throw DomainError("csv: malformed row '" + line + "'");
        ts.push_back(std::stod(a));
        vs.push_back(std::stod(b));
    }
    if (ts.size() < 2) throw DomainError("csv: need at least two rows");
    GridFunction g;
    g.t0 = ts.front();
    g.h = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (std::abs(ts[i] - g.t(i)) > 1e-9 * std::max(1.0, std::abs(ts[i])))
            throw DomainError("csv: grid is not uniform");
    g.values = std::move(vs);
    g.validate();
    return g;
}

}  // namespace fraclab
