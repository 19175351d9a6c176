#include "capax/capacity.hpp"

#include <algorithm>
#include <cmath>

#include "capax/parallel.hpp"

namespace capax {

Tier tier_from_string(const std::string& s) {
    if (s == "fast") return Tier::Fast;
    if (s == "standard") return Tier::Standard;
    if (s == "high") return Tier::High;
    throw input_error("unknown tier: " + s);
}

const char* tier_name(Tier t) {
    switch (t) {
        case Tier::Fast: return "fast";
        case Tier::Standard: return "standard";
        default: return "high";
    }
}

double tier_rel_tol(Tier t) {
    switch (t) {
        case Tier::Fast: return 0.030;
        case Tier::Standard: return 0.015;
        default: return 0.008;
    }
}

int CapacityConfig::effective_angular() const {
    if (angular > 0) return angular;
    if (n == 3) return tier == Tier::Fast ? 12 : tier == Tier::Standard ? 16 : 24;
    return tier == Tier::Fast ? 128 : tier == Tier::Standard ? 256 : 512;
}

int CapacityConfig::effective_layers() const {
    if (layers > 0) return layers;
    if (n == 3) return tier == Tier::Fast ? 32 : tier == Tier::Standard ? 48 : 72;
    return tier == Tier::Fast ? 48 : tier == Tier::Standard ? 80 : 128;
}

double CapacityConfig::effective_h0_scale() const {
    if (h0_scale > 0) return h0_scale;
    if (n == 3) return tier == Tier::Fast ? 1.0 / 12 : tier == Tier::Standard ? 1.0 / 16 : 1.0 / 24;
    return tier == Tier::Fast ? 1.0 / 32 : tier == Tier::Standard ? 1.0 / 64 : 1.0 / 96;
}

double ball_capacity_closed_form(int n, double p, double r) {
    if (!(p > 1.0 && p < n)) throw precondition_error("ball capacity: need 1 < p < n");
    if (!(r > 0)) throw precondition_error("ball capacity: radius must be positive");
    double k = (n - p) / (p - 1.0);
    return std::pow(k, p - 1.0) * sphere_surface_area(n) * std::pow(r, n - p);
}

double ball_capacity_truncated(int n, double p, double r, double R) {
    if (!(R > r && r > 0)) throw precondition_error("truncated ball capacity: need 0 < r < R");
    double k = (n - p) / (p - 1.0);
    double gap = std::pow(r, -k) - std::pow(R, -k);
    return std::pow(k, p - 1.0) * sphere_surface_area(n) * std::pow(gap, -(p - 1.0));
}

CapacitaryMeasure lq_capacitary_measure(const CapacitaryMeasure& mu,
                                        const std::vector<double>& h_at_atoms, double q) {
    if (h_at_atoms.size() != mu.masses.size())
        throw input_error("lq_capacitary_measure: size mismatch");
    CapacitaryMeasure out = mu;
    for (std::size_t i = 0; i < out.masses.size(); ++i) {
        if (out.masses[i] == 0) continue;
        if (!(h_at_atoms[i] > 0) && q > 1.0)
            throw precondition_error("lq_capacitary_measure: h vanishes on an active atom");
        out.masses[i] *= std::pow(h_at_atoms[i], 1.0 - q);
    }
    return out;
}

CapacitaryMeasure orlicz_capacitary_measure(const CapacitaryMeasure& mu,
                                            const std::vector<double>& h_at_atoms,
                                            const OrliczScalar& phi) {
    if (h_at_atoms.size() != mu.masses.size())
        throw input_error("orlicz_capacitary_measure: size mismatch");
    CapacitaryMeasure out = mu;
    for (std::size_t i = 0; i < out.masses.size(); ++i) {
        if (out.masses[i] == 0) continue;
        if (!(h_at_atoms[i] > 0))
            throw precondition_error("orlicz_capacitary_measure: h vanishes on an active atom");
        out.masses[i] *= phi(h_at_atoms[i]);
    }
    return out;
}

namespace {

// Deterministic chunked kernel driver. Scatter kernels (apply/diag) write into
// per-chunk buffers merged in chunk order.
struct KernelDriver {
    const kernels::MeshData md;
    const kernels::Funcs& K = kernels::active();
    int nchunk;
    std::vector<std::vector<double>> buf;

    explicit KernelDriver(const kernels::MeshData& m)
        : md(m), nchunk(std::max(1, std::min(thread_count(), m.ncell / 256 + 1))) {
        buf.assign(nchunk, std::vector<double>(md.nnode));
    }

    void grad_norm2(const double* u, double* s) {
        parallel_chunks(md.ncell, [&](int, int c0, int c1) { K.grad_norm2(md, u, s, c0, c1); });
    }

    double energy(const double* s, double p) {
        std::vector<double> part(nchunk, 0.0);
        parallel_chunks(md.ncell,
                        [&](int t, int c0, int c1) { part[t] = K.energy(md, s, p, c0, c1); });
        double e = 0;
        for (double v : part) e += v;
        return e;
    }

    void weights(const double* s, double p, double delta2, double* w) {
        parallel_chunks(md.ncell,
                        [&](int t, int c0, int c1) { K.weights(md, s, p, delta2, w, c0, c1); });
    }

    void apply(const double* w, const double* x, double* y) {
        parallel_chunks(md.ncell, [&](int t, int c0, int c1) {
            std::fill(buf[t].begin(), buf[t].end(), 0.0);
            K.apply(md, w, x, buf[t].data(), c0, c1);
        });
        std::fill(y, y + md.nnode, 0.0);
        for (int t = 0; t < nchunk; ++t)
            for (int i = 0; i < md.nnode; ++i) y[i] += buf[t][i];
    }

    void diag(const double* w, double* d) {
        parallel_chunks(md.ncell, [&](int t, int c0, int c1) {
            std::fill(buf[t].begin(), buf[t].end(), 0.0);
            K.diag(md, w, buf[t].data(), c0, c1);
        });
        std::fill(d, d + md.nnode, 0.0);
        for (int t = 0; t < nchunk; ++t)
            for (int i = 0; i < md.nnode; ++i) d[i] += buf[t][i];
    }
};

double vdot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

CapacitySolver::CapacitySolver(CapacityConfig cfg) : cfg_(cfg) {
    if (cfg_.n != 2 && cfg_.n != 3) throw precondition_error("capacity: n must be 2 or 3");
    if (!(cfg_.p > 1.0 && cfg_.p < cfg_.n))
        throw precondition_error("capacity: p must lie in (1, n)");
    sphere_ = make_grid_ptr(cfg_.n, cfg_.effective_angular());
}

CapacityReport CapacitySolver::solve(const Body& body, const CapacityReport* warm,
                                     double fixed_R) const {
    const int n = cfg_.n;
    const double p = cfg_.p;
    if (body.n != n) throw input_error("capacity: body dimension mismatch");

    const double rc = body.circumradius();
    if (cfg_.trunc_factor < 4.0)
        throw precondition_error("capacity: truncation factor must be >= 4");
    const double R = fixed_R > 0 ? fixed_R : cfg_.trunc_factor * rc;
    auto mesh = std::make_shared<ExteriorMesh>(sphere_, body, R, cfg_.effective_layers(),
                                               cfg_.effective_h0_scale() * rc);
    const auto md = mesh->data();
    KernelDriver drv(md);

    const int nnode = md.nnode;
    const std::size_t nsq = std::size_t(md.ncell) * md.nq;

    std::vector<double> u;
    if (warm && warm->mesh && warm->mesh->layers() == mesh->layers() &&
        warm->mesh->sphere_ptr().get() == sphere_.get() &&
        static_cast<int>(warm->field.size()) == nnode) {
        u = warm->field;
    } else {
        mesh->radial_initial_guess(p, u);
    }
    for (int i = 0; i < nnode; ++i)
        if (mesh->is_fixed(i)) u[i] = mesh->bc_value(i);

    std::vector<double> s(nsq), w(nsq), grad(nnode), dir(nnode), q(nnode), z(nnode), diag(nnode),
        utry(nnode);

    CapacityReport rep;
    rep.p = p;
    rep.mesh = mesh;

    double wdet_total = 0;
    for (int c = 0; c < md.ncell; ++c)
        for (int qq = 0; qq < md.nq; ++qq) wdet_total += md.wdet[std::size_t(c) * md.nq + qq];

    auto mask = [&](std::vector<double>& v) {
        for (int i = 0; i < nnode; ++i)
            if (mesh->is_fixed(i)) v[i] = 0.0;
    };

    double E = 0, r0norm = -1.0, rnorm = 0;
    long cg_total = 0;
    const int max_outer = p == 2.0 ? 4 : 80;
    bool converged = false;
    int outer = 0;

    for (outer = 0; outer < max_outer; ++outer) {
        drv.grad_norm2(u.data(), s.data());
        E = drv.energy(s.data(), p);

        double mean_s = 0;
        for (std::size_t k = 0; k < nsq; ++k) mean_s += s[k] * md.wdet[k];
        mean_s /= wdet_total;
        double delta2 = 1e-14 * mean_s + 1e-300;

        drv.weights(s.data(), p, delta2, w.data());
        drv.apply(w.data(), u.data(), grad.data());
        mask(grad);
        rnorm = std::sqrt(vdot(grad, grad));
        if (r0norm < 0) r0norm = std::max(rnorm, 1e-300);
        if (rnorm <= cfg_.tol * r0norm) { converged = true; break; }
        if (cg_total >= cfg_.max_iter) break;

        drv.diag(w.data(), diag.data());
        for (int i = 0; i < nnode; ++i)
            if (mesh->is_fixed(i) || diag[i] <= 0) diag[i] = 1.0;

        // PCG for A_w d = -grad on the free nodes.
        std::vector<double>& b = q; // reuse storage
        for (int i = 0; i < nnode; ++i) b[i] = -grad[i];
        std::fill(dir.begin(), dir.end(), 0.0);
        {
            std::vector<double> res = b, zz(nnode), pp(nnode), Ap(nnode);
            for (int i = 0; i < nnode; ++i) zz[i] = res[i] / diag[i];
            pp = zz;
            double rz = vdot(res, zz);
            double bnorm = std::sqrt(vdot(b, b));
            double inner_tol =
                p == 2.0 ? std::max(0.01 * cfg_.tol, 1e-11)
                         : std::clamp(0.1 * rnorm / r0norm, 1e-10, 0.1);
            long cap = std::min<long>(cfg_.max_iter - cg_total, 4000);
            for (long it = 0; it < cap; ++it) {
                drv.apply(w.data(), pp.data(), Ap.data());
                mask(Ap);
                double pAp = vdot(pp, Ap);
                if (!(pAp > 0)) break;
                double alpha = rz / pAp;
                for (int i = 0; i < nnode; ++i) {
                    dir[i] += alpha * pp[i];
                    res[i] -= alpha * Ap[i];
                }
                ++cg_total;
                if (std::sqrt(vdot(res, res)) <= inner_tol * bnorm) break;
                for (int i = 0; i < nnode; ++i) zz[i] = res[i] / diag[i];
                double rz2 = vdot(res, zz);
                double beta = rz2 / rz;
                rz = rz2;
                for (int i = 0; i < nnode; ++i) pp[i] = zz[i] + beta * pp[i];
            }
        }

        double gd = vdot(grad, dir);
        if (!(gd < 0)) { // fall back to the preconditioned gradient
            for (int i = 0; i < nnode; ++i) dir[i] = -grad[i] / diag[i];
            gd = vdot(grad, dir);
        }
        double t = 1.0;
        for (int ls = 0; ls < 40; ++ls) {
            for (int i = 0; i < nnode; ++i) utry[i] = u[i] + t * dir[i];
            drv.grad_norm2(utry.data(), s.data());
            double Etry = drv.energy(s.data(), p);
            if (Etry <= E + 1e-4 * t * gd || Etry <= E * (1 - 1e-15)) break;
            t *= 0.5;
        }
        u.swap(utry);
    }

    rep.converged = converged;
    rep.outer_iterations = outer;
    rep.cg_iterations = cg_total;
    rep.gradient_reduction = r0norm > 0 ? rnorm / r0norm : 0.0;

    // Maximum principle check (diagnostic, not a projection).
    for (double v : u)
        if (v < -1e-6 || v > 1.0 + 1e-6)
            throw convergence_error("capacity: potential violates the maximum principle");

    drv.grad_norm2(u.data(), s.data());
    rep.energy_raw = drv.energy(s.data(), p);

    // Truncation correction calibrated on the annular condenser, with the
    // reference radius chosen self-consistently (the ball of equal capacity):
    // exact for balls, first-order exact in 1/R for everything else.
    const double kappa = (n - p) / (p - 1.0);
    const double omega = sphere_surface_area(n);
    const double Rk = std::pow(R, kappa);
    double e1 = std::pow(rep.energy_raw, 1.0 / (p - 1.0));
    double A = std::pow(omega, 1.0 / (p - 1.0)) * kappa;
    double zk = e1 / (A + e1 / Rk); // = r_equiv^kappa
    rep.energy_correction = std::pow(1.0 - zk / Rk, p - 1.0);
    rep.measure_correction = std::pow(1.0 - zk / Rk, p);
    rep.capacity = rep.energy_raw * rep.energy_correction;
    rep.equivalent_radius = std::pow(zk, 1.0 / kappa);

    // Capacitary measure: one-sided 3-point radial derivative at each
    // boundary direction, converted to the normal derivative by the cosine
    // between the ray and the facet normal, integrated over the boundary
    // patch subtended by the direction's dual cell.
    const DirectionGrid& sg = *sphere_;
    const bool poly = body.kind == Body::Kind::Polytope;
    if (poly) {
        rep.measure.dirs = body.poly.normals();
        rep.measure.masses.assign(rep.measure.dirs.size(), 0.0);
        rep.h_at_atoms = body.poly.offsets();
    } else {
        rep.measure.dirs = sg.dirs;
        rep.measure.masses.assign(sg.size(), 0.0);
        rep.h_at_atoms.assign(sg.size(), body.ball_radius);
    }
    for (std::size_t dd = 0; dd < sg.size(); ++dd) {
        int id = static_cast<int>(dd);
        double r0 = mesh->node_radius(id, 0), r1 = mesh->node_radius(id, 1),
               r2 = mesh->node_radius(id, 2);
        double u0 = 1.0, u1 = u[mesh->node_id(id, 1)], u2 = u[mesh->node_id(id, 2)];
        double dudr = u0 * (2 * r0 - r1 - r2) / ((r0 - r1) * (r0 - r2)) +
                      u1 * (r0 - r2) / ((r1 - r0) * (r1 - r2)) +
                      u2 * (r0 - r1) / ((r2 - r0) * (r2 - r1));
        auto [nu, facet] = body.boundary_normal(sg.dirs[dd]);
        double cosv = dot(nu, sg.dirs[dd]);
        if (!(cosv > 1e-12)) throw precondition_error("capacity: boundary normal degenerate");
        double gradmag = std::abs(dudr) / cosv;
        double patch = sg.weights[dd] * std::pow(r0, n - 1) / cosv;
        double mass = std::pow(gradmag, p) * patch * rep.measure_correction;
        rep.measure.masses[poly ? facet : static_cast<int>(dd)] += mass;
    }

    double poin = 0;
    for (std::size_t i = 0; i < rep.measure.masses.size(); ++i)
        poin += rep.h_at_atoms[i] * rep.measure.masses[i];
    rep.poincare = (p - 1.0) / (n - p) * poin;

    rep.field = std::move(u);
    return rep;
}

} // namespace capax
