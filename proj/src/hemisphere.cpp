#include "capax/hemisphere.hpp"

#include <algorithm>
#include <cmath>

#include "capax/direction_grid.hpp"

namespace capax {

namespace {

// Min-norm point of conv{u_i} via Frank-Wolfe with exact line search.
// Enough precision to certify "origin clearly outside the hull" and to hand
// back the chord direction as a witness.
Vec3 min_norm_point(const std::vector<Vec3>& pts) {
    Vec3 x = pts[0];
    for (int it = 0; it < 2000; ++it) {
        std::size_t best = 0;
        double bd = dot(x, pts[0]);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            double d = dot(x, pts[i]);
            if (d < bd) { bd = d; best = i; }
        }
        Vec3 d = pts[best] - x;
        double gg = -dot(x, d);
        if (gg <= 1e-16) break;
        double t = std::clamp(gg / std::max(norm2(d), 1e-300), 0.0, 1.0);
        x = x + t * d;
        if (norm2(x) < 1e-20) break;
    }
    return x;
}

} // namespace

HemisphereCertificate hemisphere_check(int n, const std::vector<Vec3>& dirs,
                                       const std::vector<double>& weights) {
    if (dirs.empty() || dirs.size() != weights.size())
        throw input_error("hemisphere_check: empty or mismatched input");
    for (double w : weights)
        if (!(w > 0)) throw input_error("hemisphere_check: weights must be positive");

    HemisphereCertificate cert;

    auto value = [&](Vec3 theta) {
        double s = 0.0;
        for (std::size_t i = 0; i < dirs.size(); ++i)
            s += weights[i] * std::max(dot(theta, dirs[i]), 0.0);
        return s;
    };

    double total = 0.0;
    for (double w : weights) total += w;

    // Hull test first: if the origin is clearly outside conv{u_i}, the chord
    // to the nearest hull point gives an exact witness hemisphere.
    Vec3 q = min_norm_point(dirs);
    if (norm(q) > 1e-7) {
        cert.pass = false;
        cert.witness = normalized(-q);
        cert.min_value = value(cert.witness);
        return cert;
    }

    // Dense sampling for the strict positivity margin.
    DirectionGrid probe = n == 2 ? make_grid(2, 1024) : make_grid(3, 24);
    double best = 1e300;
    Vec3 argbest{};
    auto consider = [&](Vec3 theta) {
        double v = value(theta);
        if (v < best) { best = v; argbest = theta; }
    };
    for (const Vec3& t : probe.dirs) consider(t);
    for (const Vec3& u : dirs) { consider(u); consider(-u); }

    cert.min_value = best;
    cert.witness = argbest;
    cert.pass = best > 1e-9 * total;
    return cert;
}

} // namespace capax
