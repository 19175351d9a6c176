#pragma once

#include <memory>

#include "capax/body.hpp"
#include "capax/direction_grid.hpp"
#include "capax/kernels.hpp"

namespace capax {

/// Body-fitted mesh of the truncated exterior domain B(0,R) \ body.
///
/// Nodes live on radial rays through the sphere-grid directions:
///   node(dir, layer) at radius rho(dir) + (R - rho(dir)) * s_layer,
/// with a geometric radial profile s whose first layer matches the requested
/// thickness. Layer 0 is the body boundary (Dirichlet 1), the last layer the
/// truncation sphere (Dirichlet 0). Cells are isoparametric bilinear quads
/// (n=2) or trilinear hexes (n=3); per-quadrature-point gradient factors and
/// weighted determinants are precomputed for the kernels.
class ExteriorMesh {
public:
    ExteriorMesh(GridPtr sphere, const Body& body, double trunc_radius, int layers,
                 double first_layer_thickness);

    const DirectionGrid& sphere() const { return *sphere_; }
    GridPtr sphere_ptr() const { return sphere_; }
    int layers() const { return layers_; }
    double trunc_radius() const { return R_; }
    int node_count() const { return static_cast<int>(node_pos_.size()); }
    int node_id(int dir, int layer) const { return dir * (layers_ + 1) + layer; }
    Vec3 node_position(int node) const { return node_pos_[node]; }
    double node_radius(int dir, int layer) const { return radius_[node_id(dir, layer)]; }
    double boundary_radius(int dir) const { return radius_[node_id(dir, 0)]; }

    bool is_fixed(int node) const { return fixed_[node] != 0; }
    double bc_value(int node) const { return bc_[node]; }

    kernels::MeshData data() const;
    double first_layer() const { return h0_; }

    /// Fill u with the per-ray annulus profile for exponent kappa=(n-p)/(p-1);
    /// satisfies both Dirichlet conditions exactly.
    void radial_initial_guess(double p, std::vector<double>& u) const;

private:
    GridPtr sphere_;
    int layers_ = 0;
    double R_ = 0.0;
    double h0_ = 0.0;
    std::vector<Vec3> node_pos_;
    std::vector<double> radius_;
    std::vector<std::uint8_t> fixed_;
    std::vector<double> bc_;
    std::vector<std::int32_t> cell_nodes_;
    std::vector<double> B_;
    std::vector<double> wdet_;
    int ncell_ = 0, na_ = 0, nd_ = 0, nq_ = 0;
};

} // namespace capax
