#pragma once

#include <functional>
#include <span>
#include <vector>

#include "capax/geo.hpp"

namespace capax {

/// Function classes for scalar Orlicz functions:
///   Increasing        - strictly increasing, f(0+)=0, f(1)=1, f(inf)=inf
///   Decreasing        - strictly decreasing, f(0+)=inf, f(1)=1, f(inf)=0
///   ConvexIncreasing  - increasing and convex with f(0)=0, f(1)=1
enum class FnClass { Increasing, Decreasing, ConvexIncreasing };

/// Scalar Orlicz function with sampled class validation. Membership is
/// checked on a logarithmic lattice (64 points per decade across
/// [1e-6, 1e6]); violations abort construction. Normalization f(1)=1 is
/// enforced unless `relaxed` is set.
class OrliczScalar {
public:
    OrliczScalar(std::function<double(double)> f, FnClass cls,
                 std::function<double(double)> df = nullptr, bool relaxed = false);

    /// t^q: Increasing for q>0 (ConvexIncreasing when q>=1), Decreasing for q<0.
    static OrliczScalar power(double q);

    /// Monotone cubic (PCHIP) interpolant through (ts, vals) with power-law
    /// extrapolation from the end slopes.
    static OrliczScalar table(std::vector<double> ts, std::vector<double> vals, FnClass cls,
                              bool relaxed = false);

    double operator()(double t) const { return f_(t); }
    double derivative(double t) const;

    /// One-sided derivative at t=1: left for increasing classes, right for
    /// decreasing; three-point one-sided differences at step 1e-4 when no
    /// analytic derivative was supplied.
    double one_sided_derivative_at_one() const;

    FnClass fn_class() const { return cls_; }
    bool increasing_like() const { return cls_ != FnClass::Decreasing; }

private:
    std::function<double(double)> f_;
    std::function<double(double)> df_;
    FnClass cls_;
};

/// Multivariate Orlicz function on [0,inf)^m: f(0)=0, f(e_j)=1 (skipped in
/// relaxed mode), increasing in each variable; convexity is sampled for the
/// strict class used by the Brunn-Minkowski checks.
class OrliczMulti {
public:
    OrliczMulti(int arity, std::function<double(std::span<const double>)> f,
                bool relaxed = false);

    static OrliczMulti sum_of_powers(int arity, double q);
    /// f(x) = sum_j alpha_j * phi_j(x_j); relaxed normalization unless all
    /// alpha_j = 1.
    static OrliczMulti weighted_sum(std::vector<double> alphas, std::vector<OrliczScalar> phis);

    int arity() const { return arity_; }
    double operator()(std::span<const double> x) const { return f_(x); }

private:
    int arity_;
    std::function<double(std::span<const double>)> f_;
};

/// The (phi, varphi) pair of the Minkowski-problem conditions: phi is a
/// decreasing continuous weight with phi(0+)=inf, and varphi is its
/// reciprocal antiderivative varphi(t) = int_0^t ds/phi(s), strictly
/// increasing from 0 to inf. The inverse is computed numerically; the power
/// family phi = t^{1-q} (varphi = t^q/q) takes an analytic fast path.
class AdmissiblePair {
public:
    static AdmissiblePair power(double q); // q > 1
    static AdmissiblePair from_weight(std::function<double(double)> phi);

    double weight(double t) const { return phi_(t); }
    double varphi(double t) const;
    double varphi_inv(double s) const;
    double varphi_prime(double t) const { return 1.0 / phi_(t); }

    bool is_power() const { return power_q_ > 0; }
    double power_exponent() const { return power_q_; }

private:
    AdmissiblePair() = default;
    void build_prefix_table();
    void check_inverse_derivative() const;

    std::function<double(double)> phi_;
    double power_q_ = -1.0; // > 0 when the analytic power path applies
    std::vector<double> knots_;
    std::vector<double> prefix_; // varphi at knots, by adaptive quadrature
};

/// Adaptive Simpson quadrature of f on [a,b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

} // namespace capax
