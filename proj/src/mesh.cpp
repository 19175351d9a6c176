#include "capax/mesh.hpp"

#include <cmath>

#include "capax/parallel.hpp"

namespace capax {

namespace {

// Geometric layer profile s_j = (g^j - 1)/(g^L - 1) with s_1*(R-r) = h0.
std::vector<double> radial_profile(int L, double span, double h0) {
    std::vector<double> s(L + 1);
    double t = h0 / span;
    if (t * L >= 1.0) { // uniform
        for (int j = 0; j <= L; ++j) s[j] = static_cast<double>(j) / L;
        return s;
    }
    double lo = 1.0 + 1e-12, hi = 10.0;
    auto first = [&](double g) { return (g - 1.0) / (std::pow(g, L) - 1.0); };
    while (first(hi) > t) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (first(mid) > t ? lo : hi) = mid;
    }
    double g = 0.5 * (lo + hi);
    double den = std::pow(g, L) - 1.0;
    for (int j = 0; j <= L; ++j) s[j] = (std::pow(g, j) - 1.0) / den;
    s[L] = 1.0;
    return s;
}

} // namespace

ExteriorMesh::ExteriorMesh(GridPtr sphere, const Body& body, double trunc_radius, int layers,
                           double first_layer_thickness)
    : sphere_(std::move(sphere)), layers_(layers), R_(trunc_radius), h0_(first_layer_thickness) {
    const DirectionGrid& sg = *sphere_;
    const int n = sg.n;
    const int ndir = static_cast<int>(sg.size());
    const int L = layers_;
    if (L < 4) throw precondition_error("mesh: need at least 4 radial layers");

    double rc = body.circumradius();
    if (!(R_ > 1.5 * rc)) throw precondition_error("mesh: truncation radius inside the body region");

    auto s = radial_profile(L, R_ - rc, h0_);

    node_pos_.resize(std::size_t(ndir) * (L + 1));
    radius_.resize(node_pos_.size());
    fixed_.assign(node_pos_.size(), 0);
    bc_.assign(node_pos_.size(), 0.0);
    for (int d = 0; d < ndir; ++d) {
        double rho = body.radial(sg.dirs[d]);
        if (!(rho > 0) || rho >= R_)
            throw precondition_error("mesh: body not strictly inside the truncation sphere");
        for (int j = 0; j <= L; ++j) {
            int id = node_id(d, j);
            double r = rho + (R_ - rho) * s[j];
            radius_[id] = r;
            node_pos_[id] = r * sg.dirs[d];
            if (j == 0) { fixed_[id] = 1; bc_[id] = 1.0; }
            if (j == L) { fixed_[id] = 1; bc_[id] = 0.0; }
        }
    }

    // Reference shape-function gradients at the 2^n Gauss points.
    nd_ = n;
    na_ = n == 3 ? 8 : 4;
    nq_ = na_;
    const double gp = 1.0 / std::sqrt(3.0);
    // node sign patterns
    int sx[8], sy[8], sz[8];
    if (n == 3) {
        const int px[8] = {-1, 1, 1, -1, -1, 1, 1, -1};
        const int py[8] = {-1, -1, 1, 1, -1, -1, 1, 1};
        const int pz[8] = {-1, -1, -1, -1, 1, 1, 1, 1};
        for (int a = 0; a < 8; ++a) { sx[a] = px[a]; sy[a] = py[a]; sz[a] = pz[a]; }
    } else {
        const int px[4] = {-1, 1, 1, -1};
        const int py[4] = {-1, -1, 1, 1};
        for (int a = 0; a < 4; ++a) { sx[a] = px[a]; sy[a] = py[a]; sz[a] = 0; }
    }
    std::vector<std::array<double, 3>> qpts(nq_);
    for (int q = 0; q < nq_; ++q) {
        qpts[q] = {sx[q] * gp, sy[q] * gp, n == 3 ? sz[q] * gp : 0.0};
    }
    // dN[q][a][d]
    std::vector<double> dN(std::size_t(nq_) * na_ * nd_);
    for (int q = 0; q < nq_; ++q) {
        double xi = qpts[q][0], eta = qpts[q][1], zeta = qpts[q][2];
        for (int a = 0; a < na_; ++a) {
            double fx = 1 + sx[a] * xi, fy = 1 + sy[a] * eta, fz = 1 + sz[a] * zeta;
            double* g = dN.data() + (std::size_t(q) * na_ + a) * nd_;
            if (n == 3) {
                g[0] = sx[a] * fy * fz / 8.0;
                g[1] = fx * sy[a] * fz / 8.0;
                g[2] = fx * fy * sz[a] / 8.0;
            } else {
                g[0] = sx[a] * fy / 4.0;
                g[1] = fx * sy[a] / 4.0;
            }
        }
    }

    // Cell connectivity: sphere cell x layer.
    const int nscell = static_cast<int>(sg.cells.size());
    ncell_ = nscell * L;
    cell_nodes_.resize(std::size_t(ncell_) * na_);
    for (int sc = 0; sc < nscell; ++sc) {
        const auto& q = sg.cells[sc];
        for (int j = 0; j < L; ++j) {
            std::int32_t* cn = cell_nodes_.data() + std::size_t(sc * L + j) * na_;
            if (n == 3) {
                for (int k = 0; k < 4; ++k) cn[k] = node_id(q[k], j);
                for (int k = 0; k < 4; ++k) cn[4 + k] = node_id(q[k], j + 1);
            } else {
                cn[0] = node_id(q[0], j);
                cn[1] = node_id(q[1], j);
                cn[2] = node_id(q[1], j + 1);
                cn[3] = node_id(q[0], j + 1);
            }
        }
    }

    // Isoparametric precompute: B[a][d][q] (q fastest) and wdet[q] per cell.
    B_.resize(std::size_t(ncell_) * na_ * nd_ * nq_);
    wdet_.resize(std::size_t(ncell_) * nq_);
    parallel_chunks(ncell_, [&](int, int c0, int c1) {
        for (int c = c0; c < c1; ++c) {
            const std::int32_t* cn = cell_nodes_.data() + std::size_t(c) * na_;
            double* Bc = B_.data() + std::size_t(c) * na_ * nd_ * nq_;
            double* wc = wdet_.data() + std::size_t(c) * nq_;
            for (int q = 0; q < nq_; ++q) {
                double J[3][3] = {{0}};
                for (int a = 0; a < na_; ++a) {
                    Vec3 xp = node_pos_[cn[a]];
                    const double* g = dN.data() + (std::size_t(q) * na_ + a) * nd_;
                    for (int i = 0; i < nd_; ++i)
                        for (int j = 0; j < nd_; ++j) J[i][j] += xp[i] * g[j];
                }
                double det, inv[3][3];
                if (nd_ == 3) {
                    det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                          J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                          J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
                    double id = 1.0 / det;
                    inv[0][0] = (J[1][1] * J[2][2] - J[1][2] * J[2][1]) * id;
                    inv[0][1] = (J[0][2] * J[2][1] - J[0][1] * J[2][2]) * id;
                    inv[0][2] = (J[0][1] * J[1][2] - J[0][2] * J[1][1]) * id;
                    inv[1][0] = (J[1][2] * J[2][0] - J[1][0] * J[2][2]) * id;
                    inv[1][1] = (J[0][0] * J[2][2] - J[0][2] * J[2][0]) * id;
                    inv[1][2] = (J[0][2] * J[1][0] - J[0][0] * J[1][2]) * id;
                    inv[2][0] = (J[1][0] * J[2][1] - J[1][1] * J[2][0]) * id;
                    inv[2][1] = (J[0][1] * J[2][0] - J[0][0] * J[2][1]) * id;
                    inv[2][2] = (J[0][0] * J[1][1] - J[0][1] * J[1][0]) * id;
                } else {
                    det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
                    double id = 1.0 / det;
                    inv[0][0] = J[1][1] * id;
                    inv[0][1] = -J[0][1] * id;
                    inv[1][0] = -J[1][0] * id;
                    inv[1][1] = J[0][0] * id;
                }
                if (!(std::abs(det) > 1e-300))
                    throw precondition_error("mesh: degenerate cell (zero Jacobian)");
                wc[q] = std::abs(det);
                // B_a = J^{-T} gradN_a
                for (int a = 0; a < na_; ++a) {
                    const double* gref = dN.data() + (std::size_t(q) * na_ + a) * nd_;
                    for (int d = 0; d < nd_; ++d) {
                        double v = 0;
                        for (int k = 0; k < nd_; ++k) v += inv[k][d] * gref[k];
                        Bc[(std::size_t(a) * nd_ + d) * nq_ + q] = v;
                    }
                }
            }
        }
    });
}

kernels::MeshData ExteriorMesh::data() const {
    kernels::MeshData m;
    m.ncell = ncell_;
    m.nnode = node_count();
    m.na = na_;
    m.nd = nd_;
    m.nq = nq_;
    m.cell_nodes = cell_nodes_.data();
    m.B = B_.data();
    m.wdet = wdet_.data();
    return m;
}

void ExteriorMesh::radial_initial_guess(double p, std::vector<double>& u) const {
    const int n = sphere_->n;
    const double kappa = (n - p) / (p - 1.0);
    const int ndir = static_cast<int>(sphere_->size());
    u.assign(node_count(), 0.0);
    double Rk = std::pow(R_, -kappa);
    for (int d = 0; d < ndir; ++d) {
        double rho = radius_[node_id(d, 0)];
        double ak = std::pow(rho, -kappa);
        for (int j = 0; j <= layers_; ++j) {
            double r = radius_[node_id(d, j)];
            double v = (std::pow(r, -kappa) - Rk) / (ak - Rk);
            u[node_id(d, j)] = std::min(1.0, std::max(0.0, v));
        }
    }
}

} // namespace capax
