#include "capax/combinations.hpp"

#include <algorithm>
#include <cmath>

namespace capax {

namespace {

// Root of a strictly decreasing map F on (0, inf) with F(root) = 1, given an
// initial bracket that is grown geometrically until it straddles the root.
double decreasing_root(const std::function<double(double)>& F, double lo, double hi) {
    int guard = 0;
    while (F(hi) > 1.0) {
        hi *= 2.0;
        if (++guard > 200) throw precondition_error("root bracket failure (monotonicity?)");
    }
    guard = 0;
    while (F(lo) < 1.0) {
        lo *= 0.5;
        if (++guard > 200) throw precondition_error("root bracket failure (monotonicity?)");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (F(mid) > 1.0 ? lo : hi) = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

SupportVector orlicz_sum(const std::vector<SupportVector>& bodies, const OrliczMulti& f) {
    if (bodies.empty()) throw input_error("orlicz_sum: no bodies");
    if (static_cast<int>(bodies.size()) != f.arity())
        throw input_error("orlicz_sum: arity mismatch");
    const GridPtr grid = bodies[0].grid;
    for (const auto& b : bodies) {
        if (b.grid.get() != grid.get()) throw input_error("orlicz_sum: bodies on different grids");
        b.require_positive();
    }
    const std::size_t m = bodies.size();
    std::vector<double> out(grid->size());
    std::vector<double> args(m);
    for (std::size_t u = 0; u < grid->size(); ++u) {
        double mn = 1e300, sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double h = bodies[j].values[u];
            mn = std::min(mn, h);
            sum += h;
        }
        auto F = [&](double lam) {
            for (std::size_t j = 0; j < m; ++j) args[j] = bodies[j].values[u] / lam;
            return f(args);
        };
        out[u] = decreasing_root(F, mn, sum);
    }
    return SupportVector(grid, std::move(out));
}

SupportVector linear_orlicz_combination(const SupportVector& h_K, const SupportVector& h_L,
                                        const OrliczScalar& f1, const OrliczScalar& f2,
                                        double eps) {
    if (h_K.grid.get() != h_L.grid.get())
        throw input_error("linear_orlicz_combination: grid mismatch");
    if (f1.increasing_like() != f2.increasing_like())
        throw precondition_error("linear_orlicz_combination: mixed function classes");
    if (!(eps > 0)) throw precondition_error("linear_orlicz_combination: eps must be positive");
    h_K.require_positive();
    h_L.require_positive();

    const bool incr = f1.increasing_like();
    std::vector<double> out(h_K.size());
    for (std::size_t u = 0; u < out.size(); ++u) {
        double a = h_K.values[u], b = h_L.values[u];
        auto F = [&](double g) { return f1(a / g) + eps * f2(b / g); };
        if (incr) {
            // F decreasing in g, F(a) = 1 + eps f2(b/a) > 1: root above h_K.
            out[u] = decreasing_root(F, a, a + eps * b + a);
        } else {
            // F increasing in g: bisect on the reflected map.
            auto G = [&](double g) { return 2.0 - F(g); };
            out[u] = decreasing_root(G, a * 0.5, a);
        }
    }
    return SupportVector(h_K.grid, std::move(out));
}

SupportVector hat_addition(const SupportVector& h, const SupportVector& h1,
                           const AdmissiblePair& pair, const OrliczScalar& psi, double eps) {
    if (h.grid.get() != h1.grid.get()) throw input_error("hat_addition: grid mismatch");
    h.require_positive();
    h1.require_positive();
    std::vector<double> out(h.size());
    for (std::size_t u = 0; u < out.size(); ++u) {
        double arg = pair.varphi(h.values[u]) + eps * psi(h1.values[u]);
        if (!(arg > 0))
            throw precondition_error("hat_addition: eps pushes outside the invertible range");
        out[u] = pair.varphi_inv(arg);
    }
    return SupportVector(h.grid, std::move(out));
}

double orlicz_norm(std::span<const double> f_values, std::span<const double> mu_weights,
                   const AdmissiblePair& pair) {
    if (f_values.size() != mu_weights.size())
        throw input_error("orlicz_norm: size mismatch");
    double fmax = 0.0, total = 0.0;
    for (std::size_t i = 0; i < f_values.size(); ++i) {
        if (f_values[i] < 0) throw precondition_error("orlicz_norm: f must be nonnegative");
        if (!(mu_weights[i] > 0)) throw precondition_error("orlicz_norm: mu must be positive");
        fmax = std::max(fmax, f_values[i]);
        total += mu_weights[i];
    }
    if (fmax == 0.0) return 0.0;
    const double target = pair.varphi(1.0) * total;
    auto F = [&](double lam) {
        double s = 0.0;
        for (std::size_t i = 0; i < f_values.size(); ++i)
            s += mu_weights[i] * pair.varphi(f_values[i] / lam);
        return s / target;
    };
    return decreasing_root(F, fmax, fmax);
}

} // namespace capax
