#pragma once

#include "capax/direction_grid.hpp"

namespace capax {

/// A positive function sampled on a DirectionGrid. Represents a support
/// function h_K restricted to the grid, or a generic positive function on the
/// sphere feeding the Wulff construction.
struct SupportVector {
    GridPtr grid;
    std::vector<double> values;

    SupportVector() = default;
    SupportVector(GridPtr g, std::vector<double> v);

    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }

    void require_positive() const;

    // Sampled sublinearity: h(u)+h(v) >= ||u+v|| * h((u+v)/||u+v||) for grid
    // pairs, h evaluated at the normalized midpoint by nearest grid direction.
    // A discretization slack is allowed; returns the worst violation.
    double sublinearity_defect() const;
};

/// max |f - g| over the common grid. Lower bound on the true Hausdorff
/// distance; exact for polytopes whose facet normals lie on the grid.
double hausdorff_distance(const SupportVector& f, const SupportVector& g);

} // namespace capax
