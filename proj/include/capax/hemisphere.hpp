#pragma once

#include <vector>

#include "capax/geo.hpp"

namespace capax {

struct HemisphereCertificate {
    bool pass = false;
    Vec3 witness{};       // a direction theta with sum lambda_i <theta,u_i>_+ ~ 0 on FAIL
    double min_value = 0; // min over sampled theta of the weighted positive part
};

/// PASS iff the weighted directions positively span R^n, i.e.
/// min over theta of sum_i lambda_i <theta, u_i>_+ is strictly positive.
/// Estimated by dense theta sampling combined with a min-norm-point hull test;
/// on FAIL the witness theta points away from the spanned cone.
HemisphereCertificate hemisphere_check(int n, const std::vector<Vec3>& dirs,
                                       const std::vector<double>& weights);

} // namespace capax
