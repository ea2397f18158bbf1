#include "aam/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "aam/errors.hpp"

namespace aam {

double triangle_area(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * cross2(b - a, c - a);
}

std::array<double, 3> barycentric(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    double den = cross2(b - a, c - a);
    double w1 = cross2(b - p, c - p) / den;
    double w2 = cross2(c - p, a - p) / den;
    return {w1, w2, 1.0 - w1 - w2};
}

std::vector<std::array<int, 2>> Triangulation::boundary_edges() const {
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : triangles) {
        for (int e = 0; e < 3; ++e) {
            int u = t[static_cast<std::size_t>(e)];
            int v = t[static_cast<std::size_t>((e + 1) % 3)];
            count[{std::min(u, v), std::max(u, v)}]++;
        }
    }
    std::vector<std::array<int, 2>> out;
    for (const auto& [edge, n] : count)
        if (n == 1) out.push_back({edge.first, edge.second});
    return out;
}

namespace {

struct Tri {
    int a, b, c;
    bool alive = true;
};

// The three bounding vertices live at infinity in fixed directions instead of
// at large finite coordinates: a thin hull triangle can have an arbitrarily
// large circumcircle, so any finite bounding triangle would fall inside it and
// destroy the triangle during construction.  Predicates involving bounding
// vertices take the leading order of the incircle/orientation determinant as
// the distance goes to infinity, which reduces them to half-plane tests.
// Directions are spread 120 degrees apart, offset so no axis-aligned data
// edge is parallel to one of them.
constexpr double kInfDir[3][2] = {
    {-0.224951054343865, 0.974370064785235},  // 103 degrees
    {-0.731353701619171, -0.681998360062498}, // 223 degrees
    {0.956304755963035, -0.292371704722737},  // 343 degrees
};

struct Predicates {
    const std::vector<Vec2>& pts; // real points only
    int v;                        // indices >= v are at infinity

    bool is_inf(int i) const { return i >= v; }
    Vec2 dir(int i) const { return {kInfDir[i - v][0], kInfDir[i - v][1]}; }
    const Vec2& at(int i) const { return pts[static_cast<std::size_t>(i)]; }

    // Sign of twice the signed area, with vertices at infinity handled by
    // their leading term in the limit.
    double orient(int a, int b, int c) const {
        int inf = is_inf(a) + is_inf(b) + is_inf(c);
        // Rotate cyclically (even permutation, sign preserved) until the
        // pattern is (real, real, inf), (real, inf, inf), or all-real.
        while (inf == 1 ? !is_inf(c) : (inf == 2 && is_inf(a))) {
            int t = a;
            a = b;
            b = c;
            c = t;
        }
        if (inf == 0) return cross2(at(b) - at(a), at(c) - at(a));
        if (inf == 1) return cross2(at(b) - at(a), dir(c));
        if (inf == 2) return cross2(dir(b), dir(c));
        return 1.0; // the bounding triangle itself is stored CCW
    }

    // Strictly-inside-circumcircle for a CCW triangle; p is always real.
    bool in_circumcircle(const Vec2& p, int ia, int ib, int ic) const {
        int inf = is_inf(ia) + is_inf(ib) + is_inf(ic);
        while (inf == 1 ? !is_inf(ic) : (inf == 2 && is_inf(ia))) {
            int t = ia;
            ia = ib;
            ib = ic;
            ic = t;
        }
        if (inf == 0) {
            const Vec2 &a = at(ia), &b = at(ib), &c = at(ic);
            double ax = a.x - p.x, ay = a.y - p.y;
            double bx = b.x - p.x, by = b.y - p.y;
            double cx = c.x - p.x, cy = c.y - p.y;
            double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                         (bx * bx + by * by) * (ax * cy - cx * ay) +
                         (cx * cx + cy * cy) * (ax * by - bx * ay);
            return det > 0.0;
        }
        if (inf == 1) // circumcircle degenerates to the half-plane left of a->b
            return cross2(at(ia) - p, at(ib) - p) > 0.0;
        if (inf == 2) // leading term couples the real vertex with the two directions
            return cross2(at(ia) - p, dir(ib) - dir(ic)) > 0.0;
        return true; // bounding triangle covers the whole plane
    }
};

} // namespace

Triangulation delaunay_triangulate(const Shape& reference) {
    const int v = reference.size();
    if (v < 3) throw DegenerateGeometryError("triangulation needs at least 3 landmarks");
    if (!reference.all_finite()) throw DegenerateGeometryError("non-finite landmark coordinates");

    // Collinearity check up front: max doubled area over all pairs with the
    // first spanning pair.
    double xmin, ymin, xmax, ymax;
    reference.bounding_box(xmin, ymin, xmax, ymax);
    double span = std::max(xmax - xmin, ymax - ymin);
    if (span <= 0.0) throw DegenerateGeometryError("all landmarks coincide");
    bool noncollinear = false;
    for (int i = 2; i < v && !noncollinear; ++i) {
        double area = triangle_area(reference[0], reference[1], reference[i]);
        if (std::abs(area) > 1e-12 * span * span) noncollinear = true;
    }
    // First two points may coincide; fall back to a full scan.
    if (!noncollinear) {
        for (int i = 0; i < v && !noncollinear; ++i)
            for (int j = i + 1; j < v && !noncollinear; ++j)
                for (int k = j + 1; k < v && !noncollinear; ++k)
                    if (std::abs(triangle_area(reference[i], reference[j], reference[k])) > 1e-12 * span * span)
                        noncollinear = true;
        if (!noncollinear) throw DegenerateGeometryError("all landmarks are collinear");
    }

    // Bowyer-Watson, coordinates normalized to a unit box for incircle
    // conditioning, with the bounding triangle at infinity (see Predicates).
    double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(v));
    for (const Vec2& q : reference.points) pts.push_back({(q.x - cx) / span, (q.y - cy) / span});
    const int s0 = v, s1 = v + 1, s2 = v + 2;
    const Predicates pred{pts, v};

    auto ccw = [&](int a, int b, int c) -> Tri {
        if (pred.orient(a, b, c) < 0.0) std::swap(b, c);
        return Tri{a, b, c};
    };

    std::vector<Tri> tris;
    tris.push_back(Tri{s0, s1, s2});

    for (int ip = 0; ip < v; ++ip) {
        const Vec2& p = pts[static_cast<std::size_t>(ip)];

        // Cavity: triangles whose circumcircle contains p.
        std::vector<int> bad;
        for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
            const Tri& tr = tris[static_cast<std::size_t>(t)];
            if (!tr.alive) continue;
            if (pred.in_circumcircle(p, tr.a, tr.b, tr.c)) bad.push_back(t);
        }

        // Boundary of the cavity = edges appearing once among bad triangles.
        std::map<std::pair<int, int>, std::pair<int, int>> edges; // key -> (count, oriented-first)
        for (int t : bad) {
            const Tri& tr = tris[static_cast<std::size_t>(t)];
            int idx[3] = {tr.a, tr.b, tr.c};
            for (int e = 0; e < 3; ++e) {
                int u = idx[e], w = idx[(e + 1) % 3];
                auto key = std::minmax(u, w);
                auto it = edges.find({key.first, key.second});
                if (it == edges.end())
                    edges[{key.first, key.second}] = {1, u};
                else
                    it->second.first++;
            }
            tris[static_cast<std::size_t>(t)].alive = false;
        }
        for (const auto& [key, cnt] : edges) {
            if (cnt.first != 1) continue;
            int u = cnt.second;
            int w = (u == key.first) ? key.second : key.first;
            tris.push_back(ccw(u, w, ip));
        }
    }

    Triangulation out;
    for (const Tri& tr : tris) {
        if (!tr.alive) continue;
        if (tr.a >= v || tr.b >= v || tr.c >= v) continue; // touches the super-triangle
        double area = triangle_area(pts[static_cast<std::size_t>(tr.a)], pts[static_cast<std::size_t>(tr.b)],
                                    pts[static_cast<std::size_t>(tr.c)]);
        if (std::abs(area) < 1e-12) continue; // collinear triple on the hull (unit-box coords)
        // Canonical vertex order: smallest index first, orientation preserved.
        std::array<int, 3> t = {tr.a, tr.b, tr.c};
        int lo = 0;
        for (int i = 1; i < 3; ++i)
            if (t[static_cast<std::size_t>(i)] < t[static_cast<std::size_t>(lo)]) lo = i;
        std::array<int, 3> canon = {t[static_cast<std::size_t>(lo)], t[static_cast<std::size_t>((lo + 1) % 3)],
                                    t[static_cast<std::size_t>((lo + 2) % 3)]};
        out.triangles.push_back(canon);
    }
    if (out.triangles.empty()) throw DegenerateGeometryError("triangulation produced no triangles");

    std::sort(out.triangles.begin(), out.triangles.end());
    return out;
}

} // namespace aam
