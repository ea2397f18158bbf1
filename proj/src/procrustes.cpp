#include "aam/procrustes.hpp"

#include <cmath>

#include "aam/errors.hpp"

namespace aam {

Shape SimilarityTransform::apply(const Shape& s) const {
    Shape out;
    out.points.reserve(s.points.size());
    for (const Vec2& p : s.points) out.points.push_back(apply(p));
    return out;
}

double SimilarityTransform::scale() const { return std::sqrt(a * a + b * b); }

SimilarityTransform align_similarity(const Shape& src, const Shape& dst) {
    require_same_landmarks(src, dst, "align_similarity");
    const int v = src.size();
    Vec2 cs = src.centroid();
    Vec2 cd = dst.centroid();

    // Complex regression on centered configurations: (a + ib) = <dst, src> / <src, src>.
    double sxx = 0.0, re = 0.0, im = 0.0;
    for (int i = 0; i < v; ++i) {
        Vec2 u = src[i] - cs;
        Vec2 w = dst[i] - cd;
        sxx += u.x * u.x + u.y * u.y;
        re += u.x * w.x + u.y * w.y;
        im += u.x * w.y - u.y * w.x;
    }
    if (sxx < 1e-300) throw DegenerateGeometryError("align_similarity: source landmarks coincide");

    SimilarityTransform t;
    t.a = re / sxx;
    t.b = im / sxx;
    t.tx = cd.x - (t.a * cs.x - t.b * cs.y);
    t.ty = cd.y - (t.b * cs.x + t.a * cs.y);
    return t;
}

namespace {

Shape centered(const Shape& s) {
    Vec2 c = s.centroid();
    Shape out;
    out.points.reserve(s.points.size());
    for (const Vec2& p : s.points) out.points.push_back(p - c);
    return out;
}

// Rotate the aligned set so the mean's orientation is a function of the shape
// itself: dominant scatter axis onto x, then the decisive third moment made
// positive to settle the remaining half-turn.
void canonicalize_rotation(Shape& mean, std::vector<Shape>& aligned) {
    const int v = mean.size();
    double mxx = 0.0, mxy = 0.0, myy = 0.0;
    for (const Vec2& p : mean.points) {
        mxx += p.x * p.x;
        mxy += p.x * p.y;
        myy += p.y * p.y;
    }
    // Dominant eigenvector of the 2x2 scatter matrix.
    double tr = mxx + myy;
    double diff = mxx - myy;
    double disc = std::sqrt(diff * diff + 4.0 * mxy * mxy);
    double l1 = 0.5 * (tr + disc);
    double ux, uy;
    if (std::abs(mxy) > 1e-14 * tr) {
        ux = l1 - myy;
        uy = mxy;
    } else if (mxx >= myy) {
        ux = 1.0;
        uy = 0.0;
    } else {
        ux = 0.0;
        uy = 1.0;
    }
    double n = std::sqrt(ux * ux + uy * uy);
    ux /= n;
    uy /= n;

    // Rotation taking (ux, uy) to (1, 0): multiply by conj(u).
    auto rotate_all = [&](double ca, double cb) {
        SimilarityTransform r{ca, cb, 0.0, 0.0};
        mean = r.apply(mean);
        for (Shape& s : aligned) s = r.apply(s);
    };
    rotate_all(ux, -uy);

    double sx3 = 0.0, sy3 = 0.0;
    for (const Vec2& p : mean.points) {
        sx3 += p.x * p.x * p.x;
        sy3 += p.y * p.y * p.y;
    }
    double decisive = (std::abs(sx3) >= std::abs(sy3)) ? sx3 : sy3;
    if (decisive < 0.0) rotate_all(-1.0, 0.0);
    (void)v;
}

} // namespace

ProcrustesResult procrustes_align(const std::vector<Shape>& shapes, double tol, int max_iterations) {
    const int n = static_cast<int>(shapes.size());
    if (n < 2) throw InsufficientDataError("procrustes_align needs at least 2 shapes");
    for (int i = 1; i < n; ++i) require_same_landmarks(shapes[0], shapes[i], "procrustes_align");
    const int v = shapes[0].size();

    ProcrustesResult res;
    res.aligned.reserve(static_cast<std::size_t>(n));
    for (const Shape& s : shapes) {
        if (!s.all_finite()) throw DegenerateGeometryError("procrustes_align: non-finite landmark");
        res.aligned.push_back(centered(s));
    }

    auto normalize_to_unit = [&](Shape& s) {
        Vec2 c = s.centroid();
        double size = s.centroid_size();
        if (size < 1e-300) throw DegenerateGeometryError("procrustes_align: degenerate shape");
        for (Vec2& p : s.points) p = (p - c) * (1.0 / size);
    };

    res.mean = res.aligned[0];
    normalize_to_unit(res.mean);

    for (int it = 0; it < max_iterations; ++it) {
        res.iterations = it + 1;
        for (Shape& s : res.aligned) s = align_similarity(s, res.mean).apply(s);

        Shape next;
        next.points.assign(static_cast<std::size_t>(v), Vec2{0.0, 0.0});
        for (const Shape& s : res.aligned)
            for (int i = 0; i < v; ++i) next.points[static_cast<std::size_t>(i)] = next[i] + s[i] * (1.0 / n);
        normalize_to_unit(next);

        double change = 0.0;
        for (int i = 0; i < v; ++i) change += (next[i] - res.mean[i]).dot(next[i] - res.mean[i]);
        change = std::sqrt(change);
        res.mean = next;
        if (change < tol) break;
    }

    canonicalize_rotation(res.mean, res.aligned);
    // One final pass so every shape is optimally aligned to the reported mean.
    for (Shape& s : res.aligned) s = align_similarity(s, res.mean).apply(s);
    return res;
}

} // namespace aam
