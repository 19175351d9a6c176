#pragma once

#include "capax/orlicz.hpp"
#include "capax/support.hpp"

namespace capax {

/// Orlicz sum of support functions: per direction, the unique positive root
/// lambda of f(h_1/lambda, ..., h_m/lambda) = 1 found by bracketed bisection
/// on the strictly decreasing map. The result dominates every summand.
SupportVector orlicz_sum(const std::vector<SupportVector>& bodies, const OrliczMulti& f);

/// Linear Orlicz addition: per direction, the positive root g of
/// f1(h_K/g) + eps*f2(h_L/g) = 1. Both functions increasing-like gives
/// g >= h_K; both decreasing gives g <= h_K. Mixed classes are rejected.
SupportVector linear_orlicz_combination(const SupportVector& h_K, const SupportVector& h_L,
                                        const OrliczScalar& f1, const OrliczScalar& f2,
                                        double eps);

/// Pointwise varphi^{-1}(varphi(h) + eps * psi(h1)). eps may take either sign
/// as long as the argument stays in varphi's invertible range (positive).
SupportVector hat_addition(const SupportVector& h, const SupportVector& h1,
                           const AdmissiblePair& pair, const OrliczScalar& psi, double eps);

/// Orlicz norm ||f||_{varphi,mu} = inf{ lambda>0 :
///   sum_i mu_i varphi(f_i/lambda) <= varphi(1) sum_i mu_i }.
/// Zero for f identically zero.
double orlicz_norm(std::span<const double> f_values, std::span<const double> mu_weights,
                   const AdmissiblePair& pair);

} // namespace capax
