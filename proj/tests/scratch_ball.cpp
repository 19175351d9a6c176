// Scratch driver: ball capacity oracle sanity at all tiers. Not a ctest.
#include <chrono>
#include <cstdio>

#include "capax/capacity.hpp"

using namespace capax;

static void run(int n, double p, Tier tier) {
    CapacityConfig cfg;
    cfg.n = n;
    cfg.p = p;
    cfg.tier = tier;
    CapacitySolver solver(cfg);
    Body ball = Body::make_ball(n, 1.0);
    auto t0 = std::chrono::steady_clock::now();
    CapacityReport rep = solver.solve(ball);
    auto t1 = std::chrono::steady_clock::now();
    double exact = ball_capacity_closed_form(n, p, 1.0);
    double err = (rep.capacity - exact) / exact;
    double perr = (rep.poincare - rep.capacity) / rep.capacity;
    double mu_exact = std::pow((n - p) / (p - 1.0), p) * sphere_surface_area(n);
    double merr = (rep.measure.total() - mu_exact) / mu_exact;
    std::printf(
        "n=%d p=%.2f tier=%-8s C=%.6f exact=%.6f err=%+.3e poin_gap=%+.3e mu_err=%+.3e "
        "conv=%d outer=%d cg=%ld  %.2fs\n",
        n, p, tier_name(tier), rep.capacity, exact, err, perr, merr, rep.converged ? 1 : 0,
        rep.outer_iterations, rep.cg_iterations,
        std::chrono::duration<double>(t1 - t0).count());
}

int main() {
    for (Tier t : {Tier::Fast, Tier::Standard}) {
        run(3, 2.0, t);
        run(3, 2.5, t);
        run(2, 1.5, t);
    }
    return 0;
}
