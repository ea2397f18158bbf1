#pragma once

#include <vector>

#include "aam/shape.hpp"

namespace aam {

// Direct similarity map p -> (a*x - b*y + tx, b*x + a*y + ty), i.e. complex
// multiplication by (a + ib) plus a translation. No reflection component.
struct SimilarityTransform {
    double a = 1.0, b = 0.0;
    double tx = 0.0, ty = 0.0;

    Vec2 apply(const Vec2& p) const { return {a * p.x - b * p.y + tx, b * p.x + a * p.y + ty}; }
    Shape apply(const Shape& s) const;
    double scale() const;
};

// Least-squares similarity aligning src onto dst (closed form).
SimilarityTransform align_similarity(const Shape& src, const Shape& dst);

struct ProcrustesResult {
    std::vector<Shape> aligned;
    Shape mean; // unit centroid size, centered at the origin, canonical rotation
    int iterations = 0;
};

// Generalized Procrustes alignment: iteratively removes translation, scale and
// rotation against the running mean until the mean moves less than `tol` or
// `max_iterations` passes. The mean's in-plane rotation is canonicalized from
// its own landmark scatter so the result does not depend on any common
// similarity transform applied to the inputs.
ProcrustesResult procrustes_align(const std::vector<Shape>& shapes, double tol = 1e-10,
                                  int max_iterations = 100);

} // namespace aam
