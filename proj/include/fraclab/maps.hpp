#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "fraclab/errors.hpp"
#include "fraclab/specfun.hpp"

/// Discrete maps with memory from the Volterra form of D^alpha x = G(x).
namespace fraclab::maps {

inline constexpr double divergence_guard = 1e6;

struct MemoryMapSpec {
    double alpha = 1.0;
    double x0 = 0.0;
    double h = 1.0;
    std::function<double(double)> G;

    void validate() const {
        if (!(alpha > 0 && alpha <= 1)) throw DomainError("map: alpha must lie in (0, 1]");
        if (!(h > 0) || !std::isfinite(h)) throw DomainError("map: h must be positive");
        if (!std::isfinite(x0)) throw DomainError("map: non-finite x0");
        if (!G) throw DomainError("map: missing kick function");
    }
};

struct Orbit {
    std::vector<double> samples;
    double alpha = 1.0;
    double h = 1.0;
    std::optional<std::size_t> diverged_at;  ///< first index whose value tripped the guard
};

/// c_m = (m^alpha - (m-1)^alpha) / alpha for m >= 1.
inline double memory_weight(double alpha, std::size_t m) {
    if (m == 0) throw DomainError("memory_weight: index starts at 1");
    if (m == 1) return 1.0 / alpha;
    const double x = static_cast<double>(m);
    return -std::pow(x, alpha) * std::expm1(alpha * std::log1p(-1.0 / x)) / alpha;
}

/// x_n = x_0 + h^alpha / Gamma(alpha) sum_{j<n} c_{n-j} G(x_j).
///
/// With alpha = 1 every c_m is 1 and the update is evaluated as the
/// memoryless recursion x_{n+1} = x_n + h G(x_n).
inline Orbit iterate_map(const MemoryMapSpec& spec, std::size_t n_steps) {
    spec.validate();
    Orbit orbit{{spec.x0}, spec.alpha, spec.h, std::nullopt};
    orbit.samples.reserve(n_steps + 1);
    if (spec.alpha == 1.0) {
        double x = spec.x0;
        for (std::size_t n = 1; n <= n_steps; ++n) {
            x = x + spec.h * spec.G(x);
            if (!std::isfinite(x) || std::abs(x) > divergence_guard) {
                orbit.diverged_at = n;
                break;
            }
            orbit.samples.push_back(x);
        }
        return orbit;
    }
    const double scale = std::pow(spec.h, spec.alpha) * rgamma(spec.alpha);
    std::vector<double> c(n_steps + 1, 0.0), kicks;
    kicks.reserve(n_steps);
    for (std::size_t m = 1; m <= n_steps; ++m) c[m] = memory_weight(spec.alpha, m);
    for (std::size_t n = 1; n <= n_steps; ++n) {
        kicks.push_back(spec.G(orbit.samples.back()));
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += c[n - j] * kicks[j];
        const double x = spec.x0 + scale * s;
        if (!std::isfinite(x) || std::abs(x) > divergence_guard) {
            orbit.diverged_at = n;
            break;
        }
        orbit.samples.push_back(x);
    }
    return orbit;
}

/// Map family indexed by a parameter K: the kick is G(K, x).
struct MapFamily {
    double alpha = 1.0;
    double x0 = 0.0;
    double h = 1.0;
    std::function<double(double, double)> G;
};

struct BifurcationRow {
    double K = 0.0;
    std::vector<double> samples;  ///< recorded values after the transient
    bool divergent = false;
};

/// Iterates each K, discards `transient` steps and records the next `samples` values.
inline std::vector<BifurcationRow> bifurcation_scan(const MapFamily& family, const std::vector<double>& K_values,
                                                    std::size_t transient, std::size_t samples) {
    if (samples < 1) throw ConfigError("bifurcation: need samples >= 1");
    if (!family.G) throw DomainError("bifurcation: missing kick function");
    std::vector<BifurcationRow> rows;
    rows.reserve(K_values.size());
    for (double K : K_values) {
        auto G = family.G;
        MemoryMapSpec spec{family.alpha, family.x0, family.h, [G, K](double x) { return G(K, x); }};
        const auto orbit = iterate_map(spec, transient + samples);
        BifurcationRow row{K, {}, orbit.diverged_at.has_value()};
        for (std::size_t i = transient + 1; i < orbit.samples.size(); ++i) row.samples.push_back(orbit.samples[i]);
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Number of groups after sorting and splitting at gaps larger than `tol`.
inline std::size_t count_clusters(std::vector<double> values, double tol) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    std::size_t count = 1;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] - values[i - 1] > tol) ++count;
    return count;
}

}  // namespace fraclab::maps
