#pragma once

#include <memory>
#include <vector>

#include "capax/geo.hpp"

namespace capax {

/// A finite set of unit outward directions with quadrature weights that
/// partition the sphere's surface area. For n=3 this is a cube-sphere
/// tessellation: nodes are the welded cube-lattice points projected onto the
/// sphere, cells are the projected quads, and a node's weight is a quarter of
/// each adjacent cell's exact spherical area. For n=2: equally spaced angles.
///
/// The same structure serves as the angular mesh of the exterior-domain FEM
/// (nodes + cells), so quadrature directions and mesh directions coincide.
struct DirectionGrid {
    int n = 0;
    std::vector<Vec3> dirs;             // unit vectors, one per node
    std::vector<double> weights;        // > 0, sum = sphere_surface_area(n)
    std::vector<std::array<int, 4>> cells; // n=3: quads; n=2: {a,b,-1,-1} arcs
    int resolution = 0;                 // n=2: node count; n=3: per-face subdivision

    std::size_t size() const { return dirs.size(); }

    // Enforces the structural invariants: unit directions, positive weights
    // summing to the sphere area, and positive span of R^n.
    void validate() const;
};

using GridPtr = std::shared_ptr<const DirectionGrid>;

/// n=2: `resolution` equally spaced angles, weight 2*pi/resolution each.
/// n=3: cube-sphere with `resolution` cells per face edge (6*res^2 cells).
DirectionGrid make_grid(int n, int resolution);

inline GridPtr make_grid_ptr(int n, int resolution) {
    return std::make_shared<const DirectionGrid>(make_grid(n, resolution));
}

/// Solid angle of the spherical triangle spanned by unit vectors a,b,c.
double spherical_triangle_area(Vec3 a, Vec3 b, Vec3 c);

} // namespace capax
