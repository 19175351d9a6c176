#include "capax/support.hpp"

#include <cmath>

namespace capax {

SupportVector::SupportVector(GridPtr g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (!grid) throw input_error("SupportVector: null grid");
    if (values.size() != grid->size())
        throw input_error("SupportVector: value count does not match grid");
}

void SupportVector::require_positive() const {
    for (double v : values)
        if (!(v > 0.0)) throw precondition_error("SupportVector: values must be positive");
}

double SupportVector::sublinearity_defect() const {
    const auto& dirs = grid->dirs;
    auto nearest = [&](Vec3 u) {
        std::size_t best = 0;
        double bd = -2.0;
        for (std::size_t k = 0; k < dirs.size(); ++k) {
            double d = dot(u, dirs[k]);
            if (d > bd) { bd = d; best = k; }
        }
        return best;
    };
    double worst = 0.0;
    // Neighbor pairs via the grid cells keep this O(cells) instead of O(m^2).
    for (const auto& c : grid->cells) {
        int cnt = grid->n == 2 ? 2 : 4;
        for (int e = 0; e < cnt; ++e) {
            int i = c[e], j = c[(e + 1) % cnt];
            if (j < 0) continue;
            Vec3 s = dirs[i] + dirs[j];
            double r = norm(s);
            if (r < 1e-12) continue;
            std::size_t k = nearest((1.0 / r) * s);
            double defect = r * values[k] - values[i] - values[j];
            worst = std::max(worst, defect);
        }
    }
    return worst;
}

double hausdorff_distance(const SupportVector& f, const SupportVector& g) {
    if (f.grid.get() != g.grid.get()) {
        // Distinct grid objects are acceptable only if geometrically identical.
        if (!f.grid || !g.grid || f.grid->n != g.grid->n || f.grid->size() != g.grid->size())
            throw input_error("hausdorff_distance: grid mismatch");
        for (std::size_t i = 0; i < f.grid->size(); ++i)
            if (norm(f.grid->dirs[i] - g.grid->dirs[i]) > 1e-12)
                throw input_error("hausdorff_distance: grid mismatch");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        d = std::max(d, std::abs(f.values[i] - g.values[i]));
    return d;
}

} // namespace capax
