// Builds a few Sonine pairs and applies the general fractional integral and derivative.
#include <cmath>
#include <cstdio>

#include "fraclab/gfc.hpp"

int main() {
    using namespace fraclab;
    const auto pairs = {gfc::make_power_pair(0.4), gfc::make_multiterm_pair({{1.0, 0.5}, {0.2, 0.6}}),
                        gfc::make_gamma_pair({0.5, 2.0})};
    auto f = GridFunction::sample([](double t) { return t * std::cos(t); }, 0.0, 1.0, 1024);
    for (const auto& pair : pairs) {
        const auto back = gfc::gfd_rl(pair, gfc::gfi(pair, f));
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < f.size(); ++i) worst = std::max(worst, std::abs(back[i] - f[i]));
        std::printf("%-40s residual %.2e  D(I f) - f %.2e\n", pair.label.c_str(), pair.residual, worst);
    }
}
