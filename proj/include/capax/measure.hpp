#pragma once

#include "capax/direction_grid.hpp"
#include "capax/hemisphere.hpp"
#include "capax/support.hpp"

namespace capax {

/// Atomic measure on the sphere produced by the capacity solver: atoms sit on
/// facet normals (polytopes) or on the sphere-grid directions (balls).
struct CapacitaryMeasure {
    std::vector<Vec3> dirs;
    std::vector<double> masses; // >= 0; inactive facets carry exactly 0

    double total() const {
        double s = 0;
        for (double m : masses) s += m;
        return s;
    }
    Vec3 first_moment() const {
        Vec3 c{};
        for (std::size_t i = 0; i < dirs.size(); ++i) c = c + masses[i] * dirs[i];
        return c;
    }
};

/// Input measure for the Minkowski problem: positive atoms with a hemisphere
/// certificate, optionally validated against the antipodal condition
/// (no direction carries mass together with its antipode).
struct DiscreteMeasure {
    int n = 0;
    std::vector<Vec3> dirs;
    std::vector<double> weights;
    HemisphereCertificate certificate;

    static DiscreteMeasure create(int n, std::vector<Vec3> dirs, std::vector<double> weights,
                                  bool require_antipodal);

    double total() const {
        double s = 0;
        for (double w : weights) s += w;
        return s;
    }
};

/// Aggregate a nonnegative density sampled on a DirectionGrid into m atoms.
/// Strata are Voronoi regions of deterministically chosen seeds (the 2n axis
/// directions first, then farthest-point refinement); each atom is the
/// mass-weighted mean direction of its stratum. Total mass is preserved
/// exactly; exactly-antipodal atom pairs are jittered by half a grid cell.
DiscreteMeasure discretize_measure(const SupportVector& density, int m);

} // namespace capax
