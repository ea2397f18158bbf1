#ifndef AAM_TRIANGULATION_HPP
#define AAM_TRIANGULATION_HPP

#include <array>
#include <vector>

#include "aam/shape.hpp"

namespace aam {

// Landmark-index triples over a reference shape. Computed once on the model's
// reference shape and reused for every warp so barycentric transfer stays
// consistent across operations.
struct Triangulation {
    std::vector<std::array<int, 3>> triangles;

    int size() const { return static_cast<int>(triangles.size()); }

    // Edges incident to exactly one triangle, in deterministic order.
    // For a Delaunay triangulation of a point set these trace the convex hull.
    std::vector<std::array<int, 2>> boundary_edges() const;
};

// Deterministic incremental Delaunay triangulation of the landmark set.
// Identical input yields a bit-identical triangle list. Throws
// DegenerateGeometryError when all points are collinear.
Triangulation delaunay_triangulate(const Shape& reference);

double triangle_area(const Vec2& a, const Vec2& b, const Vec2& c);

// Barycentric coordinates of p in triangle (a, b, c); valid only when the
// triangle is non-degenerate.
std::array<double, 3> barycentric(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c);

} // namespace aam

#endif
