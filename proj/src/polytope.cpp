#include "capax/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "capax/lp.hpp"

namespace capax {

namespace {

// ---------------------------------------------------------------- 2D hull
// Monotone chain; returns hull indices in CCW order.
std::vector<int> convex_hull_2d(const std::vector<Vec3>& pts) {
    std::vector<int> idx(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
        return pts[a].y < pts[b].y;
    });
    auto cr = [&](int o, int a, int b) {
        return (pts[a].x - pts[o].x) * (pts[b].y - pts[o].y) -
               (pts[a].y - pts[o].y) * (pts[b].x - pts[o].x);
    };
    std::vector<int> h(2 * pts.size());
    std::size_t k = 0;
    for (int i : idx) {
        while (k >= 2 && cr(h[k - 2], h[k - 1], i) <= 0) --k;
        h[k++] = i;
    }
    std::size_t lower = k + 1;
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        while (k >= lower && cr(h[k - 2], h[k - 1], *it) <= 0) --k;
        h[k++] = *it;
    }
    h.resize(k - 1);
    return h;
}

// ---------------------------------------------------------------- 3D hull
struct HullFace {
    int a, b, c;
    Vec3 nrm;    // outward unit normal
    double off;  // <nrm, x> = off on the face plane
    bool alive = true;
};

void face_plane(const std::vector<Vec3>& pts, HullFace& f, Vec3 interior) {
    Vec3 n = cross(pts[f.b] - pts[f.a], pts[f.c] - pts[f.a]);
    double r = norm(n);
    if (r < 1e-300) { f.nrm = {0, 0, 0}; f.off = 0; return; }
    n = (1.0 / r) * n;
    double d = dot(n, pts[f.a]);
    if (dot(n, interior) > d) { // flip to outward
        std::swap(f.b, f.c);
        n = -n;
        d = -d;
    }
    f.nrm = n;
    f.off = d;
}

std::vector<HullFace> convex_hull_3d(const std::vector<Vec3>& pts) {
    const std::size_t m = pts.size();
    if (m < 4) throw precondition_error("convex_hull_3d: fewer than 4 points");
    double scale = 0.0;
    for (const Vec3& p : pts) scale = std::max({scale, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
    const double eps = 1e-10 * std::max(scale, 1e-30);

    // Initial tetrahedron from extreme points.
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (pts[i].x < pts[i0].x) i0 = i;
    std::size_t i1 = i0;
    double best = -1;
    for (std::size_t i = 0; i < m; ++i) {
        double d = norm2(pts[i] - pts[i0]);
        if (d > best) { best = d; i1 = i; }
    }
    if (best < eps * eps) throw precondition_error("convex_hull_3d: degenerate point set");
    std::size_t i2 = i0;
    best = -1;
    for (std::size_t i = 0; i < m; ++i) {
        double d = norm2(cross(pts[i1] - pts[i0], pts[i] - pts[i0]));
        if (d > best) { best = d; i2 = i; }
    }
    Vec3 pn = cross(pts[i1] - pts[i0], pts[i2] - pts[i0]);
    if (norm(pn) < eps * eps) throw precondition_error("convex_hull_3d: collinear point set");
    std::size_t i3 = i0;
    best = -1;
    for (std::size_t i = 0; i < m; ++i) {
        double d = std::abs(dot(pn, pts[i] - pts[i0]));
        if (d > best) { best = d; i3 = i; }
    }
    if (best < eps) throw precondition_error("convex_hull_3d: coplanar point set");

    Vec3 interior = 0.25 * (pts[i0] + pts[i1] + pts[i2] + pts[i3]);
    std::vector<HullFace> faces;
    auto add_face = [&](int a, int b, int c) {
        HullFace f{a, b, c, {}, 0.0, true};
        face_plane(pts, f, interior);
        faces.push_back(f);
    };
    add_face((int)i0, (int)i1, (int)i2);
    add_face((int)i0, (int)i1, (int)i3);
    add_face((int)i0, (int)i2, (int)i3);
    add_face((int)i1, (int)i2, (int)i3);

    for (std::size_t q = 0; q < m; ++q) {
        if (q == i0 || q == i1 || q == i2 || q == i3) continue;
        // Visible faces
        std::vector<int> vis;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!faces[f].alive) continue;
            if (dot(faces[f].nrm, pts[q]) - faces[f].off > eps) vis.push_back((int)f);
        }
        if (vis.empty()) continue;
        // Horizon: directed edges of visible faces whose reverse is not visible.
        std::map<std::pair<int, int>, int> edge_count;
        auto note = [&](int s, int t) {
            edge_count[{std::min(s, t), std::max(s, t)}]++;
        };
        for (int f : vis) {
            note(faces[f].a, faces[f].b);
            note(faces[f].b, faces[f].c);
            note(faces[f].c, faces[f].a);
        }
        std::vector<std::pair<int, int>> horizon;
        for (int f : vis) {
            int vsq[3][2] = {{faces[f].a, faces[f].b}, {faces[f].b, faces[f].c}, {faces[f].c, faces[f].a}};
            for (auto& e : vsq) {
                if (edge_count[{std::min(e[0], e[1]), std::max(e[0], e[1])}] == 1)
                    horizon.push_back({e[0], e[1]});
            }
        }
        for (int f : vis) faces[f].alive = false;
        for (auto& e : horizon) add_face(e.first, e.second, (int)q);
    }

    std::vector<HullFace> out;
    for (auto& f : faces)
        if (f.alive && norm(f.nrm) > 0.5) out.push_back(f);
    return out;
}

// Solve the 3x3 system <w, p_k> = 1 for the dual-face plane; returns false if
// the plane passes through the origin (unbounded primal direction).
bool plane_to_point(Vec3 p0, Vec3 p1, Vec3 p2, Vec3& w) {
    Vec3 r0{p0.x, p0.y, p0.z}, r1{p1.x, p1.y, p1.z}, r2{p2.x, p2.y, p2.z};
    double det = dot(r0, cross(r1, r2));
    double sc = std::max({norm(r0), norm(r1), norm(r2), 1e-30});
    if (std::abs(det) < 1e-13 * sc * sc * sc) return false;
    Vec3 c0 = cross(r1, r2), c1 = cross(r2, r0), c2 = cross(r0, r1);
    w = (1.0 / det) * (c0 + c1 + c2);
    return true;
}

std::vector<Vec3> dedupe_points(std::vector<Vec3> v, double tol) {
    std::sort(v.begin(), v.end(), [](const Vec3& a, const Vec3& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    });
    std::vector<Vec3> out;
    for (const Vec3& p : v) {
        bool dup = false;
        // Sorted by x, so only a bounded suffix needs checking.
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            if (p.x - it->x > tol) break;
            if (norm(p - *it) <= tol) { dup = true; break; }
        }
        if (!dup) out.push_back(p);
    }
    return out;
}

} // namespace

HalfspacePolytope HalfspacePolytope::from_halfspaces(int n, std::vector<Vec3> normals,
                                                     std::vector<double> offsets) {
    if (n != 2 && n != 3) throw precondition_error("polytope: n must be 2 or 3");
    if (normals.size() != offsets.size() || normals.size() < std::size_t(n + 1))
        throw input_error("polytope: need at least n+1 halfspaces");
    for (std::size_t i = 0; i < normals.size(); ++i) {
        if (n == 2) normals[i].z = 0.0;
        double r = norm(normals[i]);
        if (!(r > 1e-12) || !std::isfinite(offsets[i]))
            throw input_error("polytope: invalid halfspace");
        normals[i] = (1.0 / r) * normals[i];
        offsets[i] /= r;
    }

    HalfspacePolytope P;
    P.n_ = n;
    P.normals_ = std::move(normals);
    P.offsets_ = std::move(offsets);

    double scale = 0.0;
    for (double b : P.offsets_) scale = std::max(scale, std::abs(b));
    scale = std::max(scale, 1e-12);

    auto [cc, cr] = lp::chebyshev_center(n, P.normals_, P.offsets_);
    if (cr < 0) throw precondition_error("polytope: empty intersection");
    if (cr > 40.0 * scale) throw precondition_error("polytope: unbounded (normals do not span)");
    if (cr < 1e-10 * scale) throw precondition_error("polytope: degenerate (zero volume)");
    P.cheb_center_ = cc;
    P.cheb_radius_ = cr;

    // Dual transform around the Chebyshev center.
    std::vector<Vec3> dual(P.normals_.size());
    for (std::size_t i = 0; i < dual.size(); ++i) {
        double shifted = P.offsets_[i] - dot(P.normals_[i], cc);
        dual[i] = (1.0 / shifted) * P.normals_[i];
    }

    std::vector<Vec3> verts;
    if (n == 2) {
        std::vector<int> h = convex_hull_2d(dual);
        for (std::size_t k = 0; k < h.size(); ++k) {
            Vec3 p = dual[h[k]], q = dual[h[(k + 1) % h.size()]];
            // <w,p> = <w,q> = 1 in the plane
            double det = p.x * q.y - p.y * q.x;
            if (std::abs(det) < 1e-14) continue;
            Vec3 w{(q.y - p.y) / det, (p.x - q.x) / det, 0.0};
            verts.push_back(cc + w);
        }
    } else {
        auto hull = convex_hull_3d(dual);
        for (const auto& f : hull) {
            Vec3 w;
            if (!plane_to_point(dual[f.a], dual[f.b], dual[f.c], w))
                throw precondition_error("polytope: unbounded direction detected");
            verts.push_back(cc + w);
        }
    }
    if (verts.empty()) throw precondition_error("polytope: vertex enumeration failed");

    double circ = 0.0;
    for (const Vec3& v : verts) circ = std::max(circ, norm(v - cc));
    verts = dedupe_points(std::move(verts), 1e-9 * std::max(circ, scale));
    P.vertices_ = std::move(verts);

    // Facet polygons from tight vertices per declared normal.
    double rmax = 0.0;
    for (const Vec3& v : P.vertices_) rmax = std::max(rmax, norm(v));
    const double tight_tol = 1e-7 * std::max(rmax, scale);
    const double area_thresh = 1e-10 * std::pow(rmax, n - 1);

    P.facets_.resize(P.normals_.size());
    for (std::size_t i = 0; i < P.normals_.size(); ++i) {
        Facet& fac = P.facets_[i];
        const Vec3 u = P.normals_[i];
        for (std::size_t k = 0; k < P.vertices_.size(); ++k)
            if (P.offsets_[i] - dot(u, P.vertices_[k]) <= tight_tol)
                fac.vertex_ids.push_back(static_cast<int>(k));

        if (n == 2) {
            if (fac.vertex_ids.size() >= 2) {
                Vec3 t{-u.y, u.x, 0.0};
                auto cmp = [&](int a, int b) {
                    return dot(t, P.vertices_[a]) < dot(t, P.vertices_[b]);
                };
                auto [lo, hi] = std::minmax_element(fac.vertex_ids.begin(), fac.vertex_ids.end(), cmp);
                int vlo = *lo, vhi = *hi;
                fac.vertex_ids = {vlo, vhi};
                fac.area = norm(P.vertices_[vhi] - P.vertices_[vlo]);
            }
        } else if (fac.vertex_ids.size() >= 3) {
            Vec3 ctr{};
            for (int k : fac.vertex_ids) ctr = ctr + P.vertices_[k];
            ctr = (1.0 / fac.vertex_ids.size()) * ctr;
            Vec3 e1 = P.vertices_[fac.vertex_ids[0]] - ctr;
            e1 = e1 - dot(e1, u) * u;
            if (norm(e1) < 1e-14) e1 = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
            e1 = normalized(e1 - dot(e1, u) * u);
            Vec3 e2 = cross(u, e1);
            std::sort(fac.vertex_ids.begin(), fac.vertex_ids.end(), [&](int a, int b) {
                Vec3 da = P.vertices_[a] - ctr, db = P.vertices_[b] - ctr;
                return std::atan2(dot(da, e2), dot(da, e1)) < std::atan2(dot(db, e2), dot(db, e1));
            });
            Vec3 va{};
            for (std::size_t k = 0; k < fac.vertex_ids.size(); ++k) {
                Vec3 a = P.vertices_[fac.vertex_ids[k]] - ctr;
                Vec3 b = P.vertices_[fac.vertex_ids[(k + 1) % fac.vertex_ids.size()]] - ctr;
                va = va + cross(a, b);
            }
            fac.area = 0.5 * std::abs(dot(va, u));
        }
        fac.active = fac.area > area_thresh;
        if (!fac.active) fac.area = 0.0; // slivers below threshold count as no facet
    }
    return P;
}

HalfspacePolytope HalfspacePolytope::cube(int n, double half_width) {
    if (!(half_width > 0)) throw precondition_error("cube: half_width must be positive");
    std::vector<Vec3> ns;
    std::vector<double> off;
    for (int d = 0; d < n; ++d)
        for (int s : {+1, -1}) {
            Vec3 u{};
            u[d] = s;
            ns.push_back(u);
            off.push_back(half_width);
        }
    return from_halfspaces(n, ns, off);
}

HalfspacePolytope HalfspacePolytope::regular_simplex(int n) {
    std::vector<Vec3> vs;
    if (n == 3) {
        double s = 1.0 / std::sqrt(3.0);
        vs = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    } else {
        constexpr double pi = 3.14159265358979323846;
        for (int k = 0; k < 3; ++k) {
            double a = pi / 2 + 2.0 * pi * k / 3.0;
            vs.push_back({std::cos(a), std::sin(a), 0.0});
        }
    }
    std::vector<Vec3> ns;
    std::vector<double> off;
    double inr = n == 3 ? 1.0 / 3.0 : 0.5;
    for (const Vec3& v : vs) {
        ns.push_back(-v);
        off.push_back(inr);
    }
    return from_halfspaces(n, ns, off);
}

double HalfspacePolytope::support(Vec3 u) const {
    double best = -1e300;
    for (const Vec3& v : vertices_) best = std::max(best, dot(v, u));
    return best;
}

SupportVector HalfspacePolytope::support_on(const GridPtr& grid) const {
    std::vector<double> vals(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i) vals[i] = support(grid->dirs[i]);
    return SupportVector(grid, std::move(vals));
}

double HalfspacePolytope::radial(Vec3 u) const {
    double best = 1e300;
    bool hit = false;
    for (std::size_t i = 0; i < normals_.size(); ++i) {
        double d = dot(normals_[i], u);
        if (d > 1e-14) {
            if (!(offsets_[i] > 0))
                throw precondition_error("radial: origin not in the interior");
            best = std::min(best, offsets_[i] / d);
            hit = true;
        }
    }
    if (!hit) throw precondition_error("radial: direction escapes all halfspaces");
    return best;
}

int HalfspacePolytope::tight_facet_at_direction(Vec3 u) const {
    double best = 1e300;
    int arg = -1;
    for (std::size_t i = 0; i < normals_.size(); ++i) {
        double d = dot(normals_[i], u);
        if (d > 1e-14) {
            double t = offsets_[i] / d;
            if (t < best) {
                best = t;
                arg = static_cast<int>(i);
            }
        }
    }
    if (arg >= 0 && !facets_[arg].active) {
        // A halfspace tangent at a vertex or edge can win the ray test by a
        // hair; boundary mass belongs to a genuine facet, so retie among
        // near-minimal candidates in favor of active ones.
        for (std::size_t i = 0; i < normals_.size(); ++i) {
            double d = dot(normals_[i], u);
            if (d > 1e-14 && facets_[i].active && offsets_[i] / d <= best * (1 + 1e-9))
                return static_cast<int>(i);
        }
    }
    return arg;
}

double HalfspacePolytope::volume() const {
    double v = 0.0;
    for (std::size_t i = 0; i < facets_.size(); ++i) v += facets_[i].area * offsets_[i];
    return v / n_;
}

double HalfspacePolytope::circumradius() const {
    double r = 0.0;
    for (const Vec3& v : vertices_) r = std::max(r, norm(v));
    return r;
}

double HalfspacePolytope::origin_inradius() const {
    double r = 1e300;
    for (double b : offsets_) r = std::min(r, b);
    return r;
}

std::vector<double> HalfspacePolytope::facet_areas() const {
    std::vector<double> a(facets_.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = facets_[i].area;
    return a;
}

HalfspacePolytope wulff_shape(const SupportVector& f) {
    f.require_positive();
    return HalfspacePolytope::from_halfspaces(f.grid->n, f.grid->dirs, f.values);
}

HalfspacePolytope scale(const HalfspacePolytope& P, double lambda) {
    if (lambda < 0) throw precondition_error("scale: negative factor");
    if (lambda == 0) throw precondition_error("scale: zero factor gives a degenerate body");
    std::vector<double> off = P.offsets();
    for (double& b : off) b *= lambda;
    return HalfspacePolytope::from_halfspaces(P.dim(), P.normals(), off);
}

HalfspacePolytope translate(const HalfspacePolytope& P, Vec3 t) {
    std::vector<double> off = P.offsets();
    for (std::size_t i = 0; i < off.size(); ++i) off[i] += dot(P.normals()[i], t);
    return HalfspacePolytope::from_halfspaces(P.dim(), P.normals(), off);
}

namespace {

void append_unique_dirs(std::vector<Vec3>& dirs, const std::vector<Vec3>& add) {
    for (const Vec3& u : add) {
        bool dup = false;
        for (const Vec3& v : dirs)
            if (dot(u, v) > 1.0 - 1e-12) { dup = true; break; }
        if (!dup) dirs.push_back(u);
    }
}

} // namespace

HalfspacePolytope minkowski_sum(const HalfspacePolytope& P, const HalfspacePolytope& Q,
                                const DirectionGrid* extra_dirs) {
    if (P.dim() != Q.dim()) throw input_error("minkowski_sum: dimension mismatch");
    std::vector<Vec3> dirs = P.normals();
    append_unique_dirs(dirs, Q.normals());
    if (extra_dirs) append_unique_dirs(dirs, extra_dirs->dirs);
    std::vector<double> off(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) off[i] = P.support(dirs[i]) + Q.support(dirs[i]);
    return HalfspacePolytope::from_halfspaces(P.dim(), dirs, off);
}

HalfspacePolytope m_addition(const std::vector<HalfspacePolytope>& bodies, const MSet& M,
                             const DirectionGrid& eval_dirs) {
    if (M.points.empty()) throw input_error("m_addition: empty coefficient set");
    if (bodies.empty()) throw input_error("m_addition: no bodies");
    const std::size_t m = bodies.size();
    for (const auto& a : M.points)
        if (a.size() != m) throw input_error("m_addition: coefficient arity mismatch");

    std::vector<Vec3> dirs = eval_dirs.dirs;
    for (const auto& B : bodies) append_unique_dirs(dirs, B.normals());

    std::vector<double> off(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        double best = -1e300;
        for (const auto& a : M.points) {
            double s = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                double c = a[j];
                s += c >= 0 ? c * bodies[j].support(dirs[i])
                            : -c * bodies[j].support(-dirs[i]);
            }
            best = std::max(best, s);
        }
        off[i] = best;
    }
    return HalfspacePolytope::from_halfspaces(bodies[0].dim(), dirs, off);
}

} // namespace capax
