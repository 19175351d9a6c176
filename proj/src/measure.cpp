#include "capax/measure.hpp"

#include <algorithm>
#include <cmath>

namespace capax {

DiscreteMeasure DiscreteMeasure::create(int n, std::vector<Vec3> dirs,
                                        std::vector<double> weights, bool require_antipodal) {
    if (dirs.size() != weights.size() || dirs.empty())
        throw input_error("DiscreteMeasure: empty or mismatched atoms");
    DiscreteMeasure mu;
    mu.n = n;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        if (n == 2) dirs[i].z = 0;
        double r = norm(dirs[i]);
        if (!(r > 1e-12)) throw input_error("DiscreteMeasure: zero direction");
        dirs[i] = (1.0 / r) * dirs[i];
        if (!(weights[i] > 0)) throw input_error("DiscreteMeasure: weights must be positive");
    }
    if (require_antipodal) {
        for (std::size_t i = 0; i < dirs.size(); ++i)
            for (std::size_t j = i + 1; j < dirs.size(); ++j)
                if (dot(dirs[i], dirs[j]) < -1.0 + 1e-12)
                    throw precondition_error(
                        "DiscreteMeasure: antipodal pair both carry mass");
    }
    mu.certificate = hemisphere_check(n, dirs, weights);
    if (!mu.certificate.pass)
        throw precondition_error("DiscreteMeasure: support contained in a closed hemisphere");
    mu.dirs = std::move(dirs);
    mu.weights = std::move(weights);
    return mu;
}

DiscreteMeasure discretize_measure(const SupportVector& density, int m) {
    const DirectionGrid& g = *density.grid;
    const int n = g.n;
    if (m < n + 1) throw input_error("discretize_measure: need at least n+1 atoms");
    std::vector<double> cellmass(g.size());
    double total = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (density.values[i] < 0) throw precondition_error("discretize_measure: negative density");
        cellmass[i] = density.values[i] * g.weights[i];
        total += cellmass[i];
    }
    if (!(total > 0)) throw precondition_error("discretize_measure: zero measure");
    {
        std::vector<double> wpos;
        std::vector<Vec3> dpos;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (cellmass[i] > 0) { wpos.push_back(cellmass[i]); dpos.push_back(g.dirs[i]); }
        if (!hemisphere_check(n, dpos, wpos).pass)
            throw precondition_error("discretize_measure: density supported in a hemisphere");
    }

    // Seeds: axis directions first, then farthest-point refinement.
    std::vector<Vec3> seeds;
    for (int d = 0; d < n && static_cast<int>(seeds.size()) < m; ++d)
        for (int s : {+1, -1}) {
            Vec3 u{};
            u[d] = s;
            if (static_cast<int>(seeds.size()) < m) seeds.push_back(u);
        }
    while (static_cast<int>(seeds.size()) < m) {
        std::size_t far = 0;
        double best = -1;
        for (std::size_t i = 0; i < g.size(); ++i) {
            double dmin = 1e300;
            for (const Vec3& s : seeds) dmin = std::min(dmin, norm2(g.dirs[i] - s));
            if (dmin > best) { best = dmin; far = i; }
        }
        seeds.push_back(g.dirs[far]);
    }

    std::vector<Vec3> acc(m, Vec3{});
    std::vector<double> mass(m, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (cellmass[i] <= 0) continue;
        std::size_t arg = 0;
        double bd = -2;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            double d = dot(g.dirs[i], seeds[s]);
            if (d > bd) { bd = d; arg = s; }
        }
        acc[arg] = acc[arg] + cellmass[i] * g.dirs[i];
        mass[arg] += cellmass[i];
    }
    std::vector<Vec3> adirs;
    std::vector<double> aw;
    for (int s = 0; s < m; ++s) {
        if (mass[s] <= 0) continue;
        Vec3 u = acc[s];
        if (norm(u) < 1e-9 * mass[s]) u = seeds[s]; // balanced stratum: keep the seed
        adirs.push_back(normalized(u));
        aw.push_back(mass[s]);
    }

    // Jitter exactly-antipodal pairs by half a grid cell.
    double half_cell = n == 2 ? 3.14159265358979323846 / g.resolution
                              : 0.5 * (3.14159265358979323846 / 2.0) / g.resolution;
    for (std::size_t i = 0; i < adirs.size(); ++i)
        for (std::size_t j = i + 1; j < adirs.size(); ++j)
            if (dot(adirs[i], adirs[j]) < -1.0 + 1e-12) {
                Vec3 u = adirs[j];
                Vec3 t = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
                if (n == 2) t = Vec3{-u.y, u.x, 0};
                t = normalized(t - dot(t, u) * u);
                adirs[j] = normalized(std::cos(half_cell) * u + std::sin(half_cell) * t);
            }

    return DiscreteMeasure::create(n, adirs, aw, /*require_antipodal=*/true);
}

} // namespace capax
