#include <cmath>

#include "capax/kernels.hpp"

namespace capax::kernels {

namespace {

void grad_norm2_scalar(const MeshData& m, const double* u, double* s, int c0, int c1) {
    const int na = m.na, nd = m.nd, nq = m.nq;
    for (int c = c0; c < c1; ++c) {
        const std::int32_t* nodes = m.cell_nodes + std::size_t(c) * na;
        const double* B = m.B + std::size_t(c) * na * nd * nq;
        double g[3][8] = {};
        for (int a = 0; a < na; ++a) {
            double ua = u[nodes[a]];
            const double* Ba = B + std::size_t(a) * nd * nq;
            for (int d = 0; d < nd; ++d)
                for (int q = 0; q < nq; ++q) g[d][q] += ua * Ba[d * nq + q];
        }
        double* sc = s + std::size_t(c) * nq;
        for (int q = 0; q < nq; ++q) {
            double acc = 0;
            for (int d = 0; d < nd; ++d) acc += g[d][q] * g[d][q];
            sc[q] = acc;
        }
    }
}

double energy_scalar(const MeshData& m, const double* s, double p, int c0, int c1) {
    const int nq = m.nq;
    const double half_p = 0.5 * p;
    double total = 0;
    for (int c = c0; c < c1; ++c) {
        const double* wd = m.wdet + std::size_t(c) * nq;
        const double* sc = s + std::size_t(c) * nq;
        double cell = 0;
        for (int q = 0; q < nq; ++q) cell += wd[q] * std::pow(sc[q], half_p);
        total += cell;
    }
    return total;
}

void weights_scalar(const MeshData& m, const double* s, double p, double delta2, double* w, int c0,
                    int c1) {
    const int nq = m.nq;
    const double e = 0.5 * (p - 2.0);
    for (int c = c0; c < c1; ++c) {
        const double* wd = m.wdet + std::size_t(c) * nq;
        const double* sc = s + std::size_t(c) * nq;
        double* wc = w + std::size_t(c) * nq;
        for (int q = 0; q < nq; ++q) wc[q] = p * wd[q] * std::pow(sc[q] + delta2, e);
    }
}

void apply_scalar(const MeshData& m, const double* w, const double* x, double* y, int c0, int c1) {
    const int na = m.na, nd = m.nd, nq = m.nq;
    for (int c = c0; c < c1; ++c) {
        const std::int32_t* nodes = m.cell_nodes + std::size_t(c) * na;
        const double* B = m.B + std::size_t(c) * na * nd * nq;
        const double* wc = w + std::size_t(c) * nq;
        double g[3][8] = {};
        for (int a = 0; a < na; ++a) {
            double xa = x[nodes[a]];
            const double* Ba = B + std::size_t(a) * nd * nq;
            for (int d = 0; d < nd; ++d)
                for (int q = 0; q < nq; ++q) g[d][q] += xa * Ba[d * nq + q];
        }
        for (int d = 0; d < nd; ++d)
            for (int q = 0; q < nq; ++q) g[d][q] *= wc[q];
        for (int a = 0; a < na; ++a) {
            const double* Ba = B + std::size_t(a) * nd * nq;
            double acc = 0;
            for (int d = 0; d < nd; ++d)
                for (int q = 0; q < nq; ++q) acc += g[d][q] * Ba[d * nq + q];
            y[nodes[a]] += acc;
        }
    }
}

void diag_scalar(const MeshData& m, const double* w, double* diag, int c0, int c1) {
    const int na = m.na, nd = m.nd, nq = m.nq;
    for (int c = c0; c < c1; ++c) {
        const std::int32_t* nodes = m.cell_nodes + std::size_t(c) * na;
        const double* B = m.B + std::size_t(c) * na * nd * nq;
        const double* wc = w + std::size_t(c) * nq;
        for (int a = 0; a < na; ++a) {
            const double* Ba = B + std::size_t(a) * nd * nq;
            double acc = 0;
            for (int d = 0; d < nd; ++d)
                for (int q = 0; q < nq; ++q) acc += wc[q] * Ba[d * nq + q] * Ba[d * nq + q];
            diag[nodes[a]] += acc;
        }
    }
}

} // namespace

const Funcs& scalar_funcs() {
    static const Funcs f{grad_norm2_scalar, energy_scalar, weights_scalar, apply_scalar,
                         diag_scalar, "scalar"};
    return f;
}

} // namespace capax::kernels
