#include "capax/direction_grid.hpp"

#include <cmath>
#include <map>
#include <tuple>

namespace capax {

double spherical_triangle_area(Vec3 a, Vec3 b, Vec3 c) {
    // Van Oosterom-Strackee: tan(omega/2) = |a.(b x c)| / (1 + a.b + b.c + c.a)
    double num = std::abs(dot(a, cross(b, c)));
    double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    return 2.0 * std::atan2(num, den);
}

void DirectionGrid::validate() const {
    if (n != 2 && n != 3) throw precondition_error("DirectionGrid: n must be 2 or 3");
    if (dirs.size() != weights.size()) throw precondition_error("DirectionGrid: size mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        if (std::abs(norm(dirs[i]) - 1.0) > 1e-12)
            throw precondition_error("DirectionGrid: non-unit direction");
        if (!(weights[i] > 0.0)) throw precondition_error("DirectionGrid: nonpositive weight");
        total += weights[i];
    }
    double area = sphere_surface_area(n);
    if (std::abs(total - area) > 1e-6 * area)
        throw precondition_error("DirectionGrid: weights do not sum to the sphere area");
    // Positive span: every probe direction must see some node in its open
    // hemisphere. Probing with the nodes and their antipodes is enough for
    // the structured grids built here.
    for (const Vec3& d : dirs) {
        for (int s : {+1, -1}) {
            Vec3 theta = static_cast<double>(s) * d;
            double best = -1.0;
            for (const Vec3& e : dirs) best = std::max(best, dot(theta, e));
            if (best < 0.05) throw precondition_error("DirectionGrid: directions do not span R^n");
        }
    }
}

namespace {

DirectionGrid circle_grid(int resolution) {
    DirectionGrid g;
    g.n = 2;
    g.resolution = resolution;
    constexpr double pi = 3.14159265358979323846;
    double w = 2.0 * pi / resolution;
    for (int k = 0; k < resolution; ++k) {
        double a = w * k;
        g.dirs.push_back({std::cos(a), std::sin(a), 0.0});
        g.weights.push_back(w);
        g.cells.push_back({k, (k + 1) % resolution, -1, -1});
    }
    return g;
}

DirectionGrid cube_sphere_grid(int res) {
    DirectionGrid g;
    g.n = 3;
    g.resolution = res;

    // Integer lattice keys make node welding across face edges exact.
    std::map<std::tuple<int, int, int>, int> node_of;
    auto node_id = [&](int ax, int sign, int ti, int tj) {
        int coord[3];
        coord[ax] = sign * res;
        coord[(ax + 1) % 3] = 2 * ti - res;
        coord[(ax + 2) % 3] = 2 * tj - res;
        auto key = std::make_tuple(coord[0], coord[1], coord[2]);
        auto it = node_of.find(key);
        if (it != node_of.end()) return it->second;
        Vec3 p{static_cast<double>(coord[0]), static_cast<double>(coord[1]),
               static_cast<double>(coord[2])};
        int id = static_cast<int>(g.dirs.size());
        g.dirs.push_back(normalized(p));
        node_of.emplace(key, id);
        return id;
    };

    for (int ax = 0; ax < 3; ++ax) {
        for (int sign : {+1, -1}) {
            for (int i = 0; i < res; ++i) {
                for (int j = 0; j < res; ++j) {
                    int a = node_id(ax, sign, i, j);
                    int b = node_id(ax, sign, i + 1, j);
                    int c = node_id(ax, sign, i + 1, j + 1);
                    int d = node_id(ax, sign, i, j + 1);
                    // Outward orientation: flip winding on negative faces.
                    if (sign > 0)
                        g.cells.push_back({a, b, c, d});
                    else
                        g.cells.push_back({a, d, c, b});
                }
            }
        }
    }

    g.weights.assign(g.dirs.size(), 0.0);
    for (const auto& q : g.cells) {
        Vec3 A = g.dirs[q[0]], B = g.dirs[q[1]], C = g.dirs[q[2]], D = g.dirs[q[3]];
        double area = spherical_triangle_area(A, B, C) + spherical_triangle_area(A, C, D);
        for (int k = 0; k < 4; ++k) g.weights[q[k]] += 0.25 * area;
    }
    return g;
}

} // namespace

DirectionGrid make_grid(int n, int resolution) {
    if (n == 2) {
        if (resolution < 3) throw precondition_error("make_grid: n=2 needs resolution >= 3");
        return circle_grid(resolution);
    }
    if (n == 3) {
        if (resolution < 2) throw precondition_error("make_grid: n=3 needs resolution >= 2");
        return cube_sphere_grid(resolution);
    }
    throw precondition_error("make_grid: n must be 2 or 3");
}

} // namespace capax
