// Fractional relaxation D^a y = -y, y(0) = 1 with both IVP solvers.
#include <cmath>
#include <cstdio>

#include "fraclab/ivp.hpp"
#include "fraclab/specfun.hpp"

int main() {
    using namespace fraclab;
    std::printf("alpha      exact            adams            diffusive\n");
    for (double alpha : {0.2, 0.5, 0.8}) {
        ivp::FodeProblem p{alpha, 0.0, 1.0, 1.0, [](double, double y) { return -y; }};
        ivp::DiffusiveConfig c;
        c.N = 1024;
        const double adams = ivp::solve_adams(p, {1024, 1}).values.back();
        const double diffusive = ivp::solve_diffusive(p, c).values.back();
        std::printf("%.1f  %.12f  %.12f  %.12f\n", alpha, mittag_leffler(alpha, -1.0), adams, diffusive);
    }
}
