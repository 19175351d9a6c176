#pragma once

#include <cstdint>
#include <string>

namespace capax::kernels {

/// SoA view of the mesh geometry consumed by the inner-loop kernels.
/// Per cell: `na` nodes, `nq` quadrature points, `nd` spatial dims.
///   cell_nodes : [ncell * na]            node ids
///   B          : [ncell * na * nd * nq]  physical gradient factors, q fastest
///   wdet       : [ncell * nq]            quadrature weight x |det J|
/// 3D: na=8, nd=3, nq=8.  2D: na=4, nd=2, nq=4.
struct MeshData {
    int ncell = 0;
    int nnode = 0;
    int na = 0, nd = 0, nq = 0;
    const std::int32_t* cell_nodes = nullptr;
    const double* B = nullptr;
    const double* wdet = nullptr;
};

/// s[c*nq + q] = |grad u|^2 at quadrature point q of cell c, for cells [c0,c1).
using GradNorm2Fn = void (*)(const MeshData&, const double* u, double* s, int c0, int c1);

/// sum over cells [c0,c1) and q of wdet * s^(p/2).
using EnergyFn = double (*)(const MeshData&, const double* s, double p, int c0, int c1);

/// w[cq] = p * wdet[cq] * (s[cq] + delta2)^((p-2)/2)   (gradient weights)
using WeightsFn = void (*)(const MeshData&, const double* s, double p, double delta2, double* w,
                           int c0, int c1);

/// y[node] += sum over cells [c0,c1) of the w-weighted operator contraction:
/// y_a += sum_q w[cq] <g_cq, B[c][a][.][q]> with g from x. Caller owns races.
using ApplyFn = void (*)(const MeshData&, const double* w, const double* x, double* y, int c0,
                         int c1);

/// diag[node] += sum over cells of w[cq] * |B[c][a][.][q]|^2.
using DiagFn = void (*)(const MeshData&, const double* w, double* diag, int c0, int c1);

struct Funcs {
    GradNorm2Fn grad_norm2 = nullptr;
    EnergyFn energy = nullptr;
    WeightsFn weights = nullptr;
    ApplyFn apply = nullptr;
    DiagFn diag = nullptr;
    const char* name = "";
};

/// Scalar reference implementations (always available).
const Funcs& scalar_funcs();
#if defined(CAPAX_BUILD_AVX2)
const Funcs& avx2_funcs();
#endif

/// Runtime-selected implementation: AVX2 when the CPU supports it, unless the
/// CAPAX_SIMD environment variable ("scalar" | "avx2") overrides the choice.
const Funcs& active();

} // namespace capax::kernels
