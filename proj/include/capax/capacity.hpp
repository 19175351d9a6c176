#pragma once

#include <memory>

#include "capax/body.hpp"
#include "capax/measure.hpp"
#include "capax/mesh.hpp"
#include "capax/orlicz.hpp"

namespace capax {

enum class Tier { Fast, Standard, High };

Tier tier_from_string(const std::string& s);
const char* tier_name(Tier t);

/// Nominal relative accuracy of a capacity solve at the given tier; used by
/// the inequality harness to propagate tolerances.
double tier_rel_tol(Tier t);

struct CapacityConfig {
    int n = 3;
    double p = 2.0;
    Tier tier = Tier::Standard;
    double trunc_factor = 8.0;
    double tol = 1e-8;   // gradient-norm reduction target
    int max_iter = 10000;

    // Discretization overrides (0 = tier default). `angular` is the per-face
    // subdivision for n=3 and the node count for n=2.
    int angular = 0;
    int layers = 0;
    double h0_scale = 0.0; // first radial layer thickness / circumradius

    int effective_angular() const;
    int effective_layers() const;
    double effective_h0_scale() const;
};

struct CapacityReport {
    double p = 0;
    double capacity = 0;       // truncation-corrected energy of the minimizer
    double energy_raw = 0;     // discrete p-Dirichlet energy before correction
    double poincare = 0;       // (p-1)/(n-p) sum h * mass with corrected masses
    double equivalent_radius = 0; // radius of the ball with the same capacity
    double energy_correction = 1, measure_correction = 1;

    CapacitaryMeasure measure;      // per-facet (polytope) or per-bin (ball)
    std::vector<double> h_at_atoms; // support values at the atom directions

    bool converged = false;
    int outer_iterations = 0;
    long cg_iterations = 0;
    double gradient_reduction = 0;

    std::shared_ptr<const ExteriorMesh> mesh;
    std::vector<double> field; // nodal potential in [0,1]
};

/// Exterior p-Laplace solver on the body-fitted mesh. p=2 reduces to a single
/// preconditioned CG solve; general p runs reweighted quadratic steps with an
/// Armijo line search on the p-Dirichlet energy.
class CapacitySolver {
public:
    explicit CapacitySolver(CapacityConfig cfg);

    /// `warm` must come from a solve with identical discretization (same
    /// sphere grid and layer count); `fixed_R` freezes the truncation radius
    /// across a family of nearby bodies so their errors correlate.
    CapacityReport solve(const Body& body, const CapacityReport* warm = nullptr,
                         double fixed_R = 0.0) const;

    const CapacityConfig& config() const { return cfg_; }
    GridPtr sphere() const { return sphere_; }

private:
    CapacityConfig cfg_;
    GridPtr sphere_;
};

/// ((n-p)/(p-1))^(p-1) * omega_{n-1} * r^(n-p), valid for 1 < p < n.
double ball_capacity_closed_form(int n, double p, double r);

/// Capacity of the annular condenser between B(0,r) and ground at B(0,R).
double ball_capacity_truncated(int n, double p, double r, double R);

/// d mu_{p,q} = h^{1-q} d mu_p: reweight per-atom masses by h^(1-q).
CapacitaryMeasure lq_capacitary_measure(const CapacitaryMeasure& mu,
                                        const std::vector<double>& h_at_atoms, double q);

/// d mu_{p,phi} = phi(h) d mu_p.
CapacitaryMeasure orlicz_capacitary_measure(const CapacitaryMeasure& mu,
                                            const std::vector<double>& h_at_atoms,
                                            const OrliczScalar& phi);

} // namespace capax
