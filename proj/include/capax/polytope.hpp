#pragma once

#include <vector>

#include "capax/direction_grid.hpp"
#include "capax/support.hpp"

namespace capax {

struct Facet {
    double area = 0.0;            // (n-1)-dimensional measure, 0 when inactive
    bool active = false;          // area above the sliver threshold
    std::vector<int> vertex_ids;  // ordered boundary polygon (n=3) / endpoints (n=2)
};

/// Bounded intersection of halfspaces { y : <u_i, y> <= x_i } with unit
/// normals. Vertices are enumerated on construction through the dual
/// transform: shift by the Chebyshev center, take the convex hull of
/// u_i / (x_i - <u_i, c>), and read primal vertices off the dual facets.
class HalfspacePolytope {
public:
    HalfspacePolytope() = default;

    /// Throws precondition_error for unbounded or degenerate (empty/flat) input.
    static HalfspacePolytope from_halfspaces(int n, std::vector<Vec3> normals,
                                             std::vector<double> offsets);

    static HalfspacePolytope cube(int n, double half_width);
    /// Regular simplex inscribed in the unit sphere (triangle / tetrahedron).
    static HalfspacePolytope regular_simplex(int n);

    int dim() const { return n_; }
    const std::vector<Vec3>& normals() const { return normals_; }
    const std::vector<double>& offsets() const { return offsets_; }
    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }

    /// Exact support function value: max over vertices of <v, u>.
    double support(Vec3 u) const;
    SupportVector support_on(const GridPtr& grid) const;

    /// Radial function: largest t with t*u inside. Requires the origin in the
    /// interior (all offsets positive).
    double radial(Vec3 u) const;

    double volume() const;
    double circumradius() const;                // max vertex norm
    double origin_inradius() const;             // distance origin -> boundary
    Vec3 chebyshev_center() const { return cheb_center_; }
    double chebyshev_radius() const { return cheb_radius_; }

    std::vector<double> facet_areas() const;

    /// Index of the facet whose halfspace is tightest at boundary point
    /// rho(u)*u; used to bin boundary quadrature onto declared normals.
    int tight_facet_at_direction(Vec3 u) const;

private:
    int n_ = 0;
    std::vector<Vec3> normals_;
    std::vector<double> offsets_;
    std::vector<Vec3> vertices_;
    std::vector<Facet> facets_;
    Vec3 cheb_center_{};
    double cheb_radius_ = 0.0;
};

/// Aleksandrov body of f: intersection over grid directions of
/// { <y, u> <= f(u) }. The result's support function never exceeds f.
HalfspacePolytope wulff_shape(const SupportVector& f);

HalfspacePolytope scale(const HalfspacePolytope& P, double lambda);
HalfspacePolytope translate(const HalfspacePolytope& P, Vec3 t);

/// Minkowski sum. The result is declared on the union of both normal sets
/// (optionally enriched with extra directions); offsets are the exact support
/// sums, so support additivity holds exactly on every declared direction.
HalfspacePolytope minkowski_sum(const HalfspacePolytope& P, const HalfspacePolytope& Q,
                                const DirectionGrid* extra_dirs = nullptr);

/// Finite compact coefficient set for M-addition.
struct MSet {
    std::vector<std::vector<double>> points; // each of size m (body count)
};

/// Convex hull of the union of a_1 K_1 + ... + a_m K_m over (a_1..a_m) in M,
/// realized on eval_dirs (plus all body normals) via the support-max formula.
HalfspacePolytope m_addition(const std::vector<HalfspacePolytope>& bodies, const MSet& M,
                             const DirectionGrid& eval_dirs);

} // namespace capax
