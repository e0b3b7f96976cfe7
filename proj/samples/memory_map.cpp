// Bifurcation scan of the kicked logistic map with and without memory.
#include <cstdio>

#include "fraclab/maps.hpp"

int main() {
    using namespace fraclab;
    std::vector<double> Ks;
    for (int i = 0; i <= 12; ++i) Ks.push_back(1.5 + 0.1 * i);
    for (double alpha : {1.0, 0.8}) {
        maps::MapFamily family{alpha, 0.3, 1.0, [](double K, double x) { return K * x * (1 - x); }};
        std::printf("alpha = %.1f\n", alpha);
        for (const auto& row : maps::bifurcation_scan(family, Ks, 400, 64))
            std::printf("  K = %.1f  clusters %zu%s\n", row.K, maps::count_clusters(row.samples, 1e-4),
                        row.divergent ? "  (divergent)" : "");
    }
}
