#pragma once

#include <optional>
#include <vector>

#include "capax/geo.hpp"

namespace capax::lp {

// Small dense linear programs in dimension <= 4, solved with Seidel's
// randomized incremental algorithm. Used for Chebyshev centers of halfspace
// polytopes and as the per-direction support-function oracle.

struct Problem {
    int dim = 0;                          // number of variables, 1..4
    std::vector<std::array<double, 4>> a; // rows of A in "a.x <= b"
    std::vector<double> b;
    std::array<double, 4> objective{};    // maximize objective . x
    double box = 1e9;                     // implicit |x_i| <= box bound
};

struct Solution {
    bool feasible = false;
    bool bounded = true;
    std::array<double, 4> x{};
    double value = 0.0;
};

Solution solve(const Problem& prob);

// Chebyshev center of { y : <normals_i, y> <= offsets_i } in R^n, n in {2,3}.
// Returns (center, radius); radius < 0 means the polytope is empty.
std::pair<Vec3, double> chebyshev_center(int n,
                                         const std::vector<Vec3>& normals,
                                         const std::vector<double>& offsets);

// max <dir, y> over the halfspace intersection; nullopt if unbounded/empty.
std::optional<double> support_max(int n,
                                  const std::vector<Vec3>& normals,
                                  const std::vector<double>& offsets,
                                  Vec3 dir);

} // namespace capax::lp
