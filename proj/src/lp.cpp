#include "capax/lp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace capax::lp {

namespace {

struct Row {
    std::array<double, 4> a{};
    double b = 0.0;
};

constexpr double kTiny = 1e-14;

// Solve max c*x over an interval given by the rows (dim 1).
std::optional<std::array<double, 4>> solve_1d(const std::vector<Row>& rows,
                                              const std::array<double, 4>& c,
                                              double box) {
    double lo = -box, hi = box;
    for (const auto& r : rows) {
        double a = r.a[0];
        if (std::abs(a) < kTiny) {
            if (r.b < -1e-11) return std::nullopt; // 0 <= b violated
            continue;
        }
        if (a > 0)
            hi = std::min(hi, r.b / a);
        else
            lo = std::max(lo, r.b / a);
    }
    if (lo > hi + 1e-11) return std::nullopt;
    std::array<double, 4> x{};
    x[0] = c[0] > 0 ? hi : (c[0] < 0 ? lo : std::clamp(0.0, lo, hi));
    return x;
}

std::optional<std::array<double, 4>> seidel(const std::vector<Row>& rows,
                                            const std::array<double, 4>& c,
                                            int d, double box) {
    if (d == 1) return solve_1d(rows, c, box);

    // Start at the box corner optimal for c; incorporate rows one by one.
    std::array<double, 4> x{};
    for (int j = 0; j < d; ++j) x[j] = c[j] > 0 ? box : (c[j] < 0 ? -box : 0.0);

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& ri = rows[i];
        double lhs = 0;
        for (int j = 0; j < d; ++j) lhs += ri.a[j] * x[j];
        double scale = std::abs(ri.b) + 1.0;
        if (lhs <= ri.b + 1e-11 * scale) continue;

        // Violated: the optimum lies on a_i * x = b_i. Eliminate the variable
        // with the largest coefficient and recurse on the first i rows.
        int k = 0;
        for (int j = 1; j < d; ++j)
            if (std::abs(ri.a[j]) > std::abs(ri.a[k])) k = j;
        if (std::abs(ri.a[k]) < kTiny) return std::nullopt;

        auto reduce = [&](const std::array<double, 4>& a, double b,
                          std::array<double, 4>& ar, double& br) {
            double alpha = a[k] / ri.a[k];
            int jj = 0;
            for (int j = 0; j < d; ++j) {
                if (j == k) continue;
                ar[jj++] = a[j] - alpha * ri.a[j];
            }
            br = b - alpha * ri.b;
        };

        std::vector<Row> sub;
        sub.reserve(i + 2);
        for (std::size_t t = 0; t < i; ++t) {
            Row r;
            reduce(rows[t].a, rows[t].b, r.a, r.b);
            sub.push_back(r);
        }
        // Box bounds of the eliminated variable become general constraints.
        {
            std::array<double, 4> ek{};
            ek[k] = 1.0;
            Row r1, r2;
            reduce(ek, box, r1.a, r1.b);
            ek[k] = -1.0;
            reduce(ek, box, r2.a, r2.b);
            sub.push_back(r1);
            sub.push_back(r2);
        }
        std::array<double, 4> cr{};
        {
            double alpha = c[k] / ri.a[k];
            int jj = 0;
            for (int j = 0; j < d; ++j) {
                if (j == k) continue;
                cr[jj++] = c[j] - alpha * ri.a[j];
            }
        }
        auto subx = seidel(sub, cr, d - 1, box);
        if (!subx) return std::nullopt;
        int jj = 0;
        for (int j = 0; j < d; ++j) {
            if (j == k) continue;
            x[j] = (*subx)[jj++];
        }
        double s = ri.b;
        for (int j = 0; j < d; ++j)
            if (j != k) s -= ri.a[j] * x[j];
        x[k] = s / ri.a[k];
    }
    return x;
}

} // namespace

Solution solve(const Problem& prob) {
    std::vector<Row> rows;
    rows.reserve(prob.a.size());
    for (std::size_t i = 0; i < prob.a.size(); ++i) rows.push_back({prob.a[i], prob.b[i]});

    // Deterministic shuffle keyed on problem size.
    std::mt19937 rng(0x9e3779b9u + static_cast<unsigned>(rows.size()));
    std::shuffle(rows.begin(), rows.end(), rng);

    Solution sol;
    auto x = seidel(rows, prob.objective, prob.dim, prob.box);
    if (!x) return sol;
    sol.feasible = true;
    sol.x = *x;
    for (int j = 0; j < prob.dim; ++j) sol.value += prob.objective[j] * (*x)[j];
    // Landing on the box indicates the true LP is unbounded in that direction.
    for (int j = 0; j < prob.dim; ++j)
        if (std::abs((*x)[j]) > 0.999 * prob.box && std::abs(prob.objective[j]) > 0)
            sol.bounded = false;
    return sol;
}

std::pair<Vec3, double> chebyshev_center(int n,
                                         const std::vector<Vec3>& normals,
                                         const std::vector<double>& offsets) {
    // Variables (y, r): maximize r subject to <u_i, y> + r <= b_i.
    Problem prob;
    prob.dim = n + 1;
    double scale = 1.0;
    for (double b : offsets) scale = std::max(scale, std::abs(b));
    prob.box = 100.0 * scale;
    for (std::size_t i = 0; i < normals.size(); ++i) {
        std::array<double, 4> row{};
        for (int j = 0; j < n; ++j) row[j] = normals[i][j];
        row[n] = 1.0;
        prob.a.push_back(row);
        prob.b.push_back(offsets[i]);
    }
    prob.objective[n] = 1.0;
    Solution sol = solve(prob);
    if (!sol.feasible) return {Vec3{}, -1.0};
    Vec3 c{sol.x[0], sol.x[1], n == 3 ? sol.x[2] : 0.0};
    return {c, sol.x[n]};
}

std::optional<double> support_max(int n,
                                  const std::vector<Vec3>& normals,
                                  const std::vector<double>& offsets,
                                  Vec3 dir) {
    Problem prob;
    prob.dim = n;
    double scale = 1.0;
    for (double b : offsets) scale = std::max(scale, std::abs(b));
    prob.box = 1000.0 * scale;
    for (std::size_t i = 0; i < normals.size(); ++i) {
        std::array<double, 4> row{};
        for (int j = 0; j < n; ++j) row[j] = normals[i][j];
        prob.a.push_back(row);
        prob.b.push_back(offsets[i]);
    }
    for (int j = 0; j < n; ++j) prob.objective[j] = dir[j];
    Solution sol = solve(prob);
    if (!sol.feasible || !sol.bounded) return std::nullopt;
    return sol.value;
}

} // namespace capax::lp
