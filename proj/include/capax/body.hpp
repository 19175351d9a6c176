#pragma once

#include "capax/polytope.hpp"

namespace capax {

/// Convex body handed to the capacity solver: a halfspace polytope or an
/// origin-centered ball (kept exact rather than faceted so the radial map and
/// boundary normals carry no polytopal error).
struct Body {
    enum class Kind { Polytope, Ball };

    Kind kind = Kind::Polytope;
    int n = 0;
    HalfspacePolytope poly;
    double ball_radius = 0.0;

    static Body make_polytope(HalfspacePolytope P) {
        Body b;
        b.kind = Kind::Polytope;
        b.n = P.dim();
        if (!(P.origin_inradius() > 0))
            throw precondition_error("body: origin must be interior (positive offsets)");
        b.poly = std::move(P);
        return b;
    }

    static Body make_ball(int n, double r) {
        if (!(r > 0)) throw precondition_error("body: ball radius must be positive");
        Body b;
        b.kind = Kind::Ball;
        b.n = n;
        b.ball_radius = r;
        return b;
    }

    double circumradius() const {
        return kind == Kind::Ball ? ball_radius : poly.circumradius();
    }

    double radial(Vec3 u) const {
        return kind == Kind::Ball ? ball_radius : poly.radial(u);
    }

    double support(Vec3 u) const {
        return kind == Kind::Ball ? ball_radius * norm(u) : poly.support(u);
    }

    /// Outward normal of the boundary point in direction theta, and the facet
    /// it belongs to (-1 for the ball).
    std::pair<Vec3, int> boundary_normal(Vec3 theta) const {
        if (kind == Kind::Ball) return {theta, -1};
        int f = poly.tight_facet_at_direction(theta);
        if (f < 0) throw precondition_error("body: no supporting facet in direction");
        return {poly.normals()[f], f};
    }
};

} // namespace capax
