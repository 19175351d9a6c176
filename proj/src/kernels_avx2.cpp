// AVX2/FMA variants of the mesh kernels. Compiled with -mavx2 -mfma in this
// TU only; callers reach them through kernels::active() which checks cpuid.
#if defined(CAPAX_BUILD_AVX2)

#include <immintrin.h>

#include <cmath>

#include "capax/kernels.hpp"

namespace capax::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(s, s);
    return _mm_cvtsd_f64(_mm_add_sd(s, sh));
}

// NA nodes, ND dims, NQ quadrature points per cell; NQ is 4 or 8.
template <int NA, int ND, int NQ>
void grad_norm2_impl(const MeshData& m, const double* u, double* s, int c0, int c1) {
    constexpr int NV = NQ / 4;
    for (int c = c0; c < c1; ++c) {
        const std::int32_t* nodes = m.cell_nodes + std::size_t(c) * NA;
        const double* B = m.B + std::size_t(c) * NA * ND * NQ;
        __m256d g[ND][NV];
        for (int d = 0; d < ND; ++d)
            for (int v = 0; v < NV; ++v) g[d][v] = _mm256_setzero_pd();
        for (int a = 0; a < NA; ++a) {
            __m256d xa = _mm256_set1_pd(u[nodes[a]]);
            const double* Ba = B + a * ND * NQ;
            for (int d = 0; d < ND; ++d)
                for (int v = 0; v < NV; ++v)
                    g[d][v] = _mm256_fmadd_pd(xa, _mm256_loadu_pd(Ba + d * NQ + 4 * v), g[d][v]);
        }
        double* sc = s + std::size_t(c) * NQ;
        for (int v = 0; v < NV; ++v) {
            __m256d acc = _mm256_mul_pd(g[0][v], g[0][v]);
            for (int d = 1; d < ND; ++d) acc = _mm256_fmadd_pd(g[d][v], g[d][v], acc);
            _mm256_storeu_pd(sc + 4 * v, acc);
        }
    }
}

template <int NA, int ND, int NQ>
void apply_impl(const MeshData& m, const double* w, const double* x, double* y, int c0, int c1) {
    constexpr int NV = NQ / 4;
    for (int c = c0; c < c1; ++c) {
        const std::int32_t* nodes = m.cell_nodes + std::size_t(c) * NA;
        const double* B = m.B + std::size_t(c) * NA * ND * NQ;
        const double* wc = w + std::size_t(c) * NQ;
        __m256d g[ND][NV];
        for (int d = 0; d < ND; ++d)
            for (int v = 0; v < NV; ++v) g[d][v] = _mm256_setzero_pd();
        for (int a = 0; a < NA; ++a) {
            __m256d xa = _mm256_set1_pd(x[nodes[a]]);
            const double* Ba = B + a * ND * NQ;
            for (int d = 0; d < ND; ++d)
                for (int v = 0; v < NV; ++v)
                    g[d][v] = _mm256_fmadd_pd(xa, _mm256_loadu_pd(Ba + d * NQ + 4 * v), g[d][v]);
        }
        for (int v = 0; v < NV; ++v) {
            __m256d wv = _mm256_loadu_pd(wc + 4 * v);
            for (int d = 0; d < ND; ++d) g[d][v] = _mm256_mul_pd(g[d][v], wv);
        }
        for (int a = 0; a < NA; ++a) {
            const double* Ba = B + a * ND * NQ;
            __m256d acc = _mm256_setzero_pd();
            for (int d = 0; d < ND; ++d)
                for (int v = 0; v < NV; ++v)
                    acc = _mm256_fmadd_pd(g[d][v], _mm256_loadu_pd(Ba + d * NQ + 4 * v), acc);
            y[nodes[a]] += hsum(acc);
        }
    }
}

template <int NA, int ND, int NQ>
void diag_impl(const MeshData& m, const double* w, double* diag, int c0, int c1) {
    constexpr int NV = NQ / 4;
    for (int c = c0; c < c1; ++c) {
        const std::int32_t* nodes = m.cell_nodes + std::size_t(c) * NA;
        const double* B = m.B + std::size_t(c) * NA * ND * NQ;
        const double* wc = w + std::size_t(c) * NQ;
        __m256d wv[NV];
        for (int v = 0; v < NV; ++v) wv[v] = _mm256_loadu_pd(wc + 4 * v);
        for (int a = 0; a < NA; ++a) {
            const double* Ba = B + a * ND * NQ;
            __m256d acc = _mm256_setzero_pd();
            for (int d = 0; d < ND; ++d)
                for (int v = 0; v < NV; ++v) {
                    __m256d b = _mm256_loadu_pd(Ba + d * NQ + 4 * v);
                    acc = _mm256_fmadd_pd(_mm256_mul_pd(b, b), wv[v], acc);
                }
            diag[nodes[a]] += hsum(acc);
        }
    }
}

void grad_norm2_avx2(const MeshData& m, const double* u, double* s, int c0, int c1) {
    if (m.na == 8 && m.nd == 3 && m.nq == 8)
        grad_norm2_impl<8, 3, 8>(m, u, s, c0, c1);
    else if (m.na == 4 && m.nd == 2 && m.nq == 4)
        grad_norm2_impl<4, 2, 4>(m, u, s, c0, c1);
    else
        scalar_funcs().grad_norm2(m, u, s, c0, c1);
}

void apply_avx2(const MeshData& m, const double* w, const double* x, double* y, int c0, int c1) {
    if (m.na == 8 && m.nd == 3 && m.nq == 8)
        apply_impl<8, 3, 8>(m, w, x, y, c0, c1);
    else if (m.na == 4 && m.nd == 2 && m.nq == 4)
        apply_impl<4, 2, 4>(m, w, x, y, c0, c1);
    else
        scalar_funcs().apply(m, w, x, y, c0, c1);
}

void diag_avx2(const MeshData& m, const double* w, double* diag, int c0, int c1) {
    if (m.na == 8 && m.nd == 3 && m.nq == 8)
        diag_impl<8, 3, 8>(m, w, diag, c0, c1);
    else if (m.na == 4 && m.nd == 2 && m.nq == 4)
        diag_impl<4, 2, 4>(m, w, diag, c0, c1);
    else
        scalar_funcs().diag(m, w, diag, c0, c1);
}

} // namespace

const Funcs& avx2_funcs() {
    // energy/weights are pow-bound and called once per outer iteration; the
    // scalar versions are reused there.
    static const Funcs f{grad_norm2_avx2, scalar_funcs().energy, scalar_funcs().weights,
                         apply_avx2, diag_avx2, "avx2"};
    return f;
}

} // namespace capax::kernels

#endif // CAPAX_BUILD_AVX2
