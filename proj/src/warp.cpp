#include "aam/warp.hpp"

#include <algorithm>
#include <cmath>

#include "aam/errors.hpp"

namespace aam {

namespace {

bool same_shape(const Shape& a, const Shape& b) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        if (a[i].x != b[i].x || a[i].y != b[i].y) return false;
    return true;
}

// Point location against an arbitrary dst shape, for the uncached path.
// Pixels outside every triangle extrapolate through the least-bad one.
void locate(const Vec2& p, const Shape& dst, const Triangulation& tri, int& tri_out,
            std::array<double, 3>& bary_out) {
    double best = -1e300;
    tri_out = -1;
    for (int t = 0; t < tri.size(); ++t) {
        const auto& idx = tri.triangles[static_cast<std::size_t>(t)];
        const Vec2& a = dst[idx[0]];
        const Vec2& b = dst[idx[1]];
        const Vec2& c = dst[idx[2]];
        if (std::abs(triangle_area(a, b, c)) < 1e-12) continue;
        auto w = barycentric(p, a, b, c);
        double lo = std::min({w[0], w[1], w[2]});
        if (lo > best) {
            best = lo;
            tri_out = t;
            bary_out = w;
        }
        if (lo >= -1e-9) return;
    }
    if (tri_out < 0) throw DegenerateGeometryError("warp destination shape is fully degenerate");
}

} // namespace

WarpResult warp_image(const ImageF64& image, const Shape& src, const Shape& dst,
                      const Triangulation& tri, const ReferenceFrame& frame) {
    require_same_landmarks(src, dst, "warp_image");
    require_same_landmarks(src, frame.reference, "warp_image");

    const int F = frame.size();
    WarpResult res;
    res.texture.resize(F);
    res.valid.assign(static_cast<std::size_t>(F), 1);

    const bool cached = same_shape(dst, frame.reference);
    for (int f = 0; f < F; ++f) {
        int t;
        std::array<double, 3> w;
        Vec2 p{static_cast<double>(frame.px[static_cast<std::size_t>(f)]),
               static_cast<double>(frame.py[static_cast<std::size_t>(f)])};
        if (cached) {
            t = frame.tri_index[static_cast<std::size_t>(f)];
            w = frame.bary[static_cast<std::size_t>(f)];
        } else {
            locate(p, dst, tri, t, w);
        }
        const auto& idx = tri.triangles[static_cast<std::size_t>(t)];
        // Displacement form keeps the identity warp exact: the barycentric
        // recombination of the pixel itself cancels instead of rounding.
        Vec2 q = p + (src[idx[0]] - dst[idx[0]]) * w[0] + (src[idx[1]] - dst[idx[1]]) * w[1] +
                 (src[idx[2]] - dst[idx[2]]) * w[2];
        BilinearSample s = sample_bilinear(image, q.x, q.y);
        res.texture[f] = s.value;
        if (!s.inside) {
            res.valid[static_cast<std::size_t>(f)] = 0;
            ++res.out_of_image;
        }
    }
    return res;
}

WarpResult sample_to_reference(const ImageF64& image, const Eigen::VectorXd& p,
                               const PointDistributionModel& pdm, const Triangulation& tri,
                               const ReferenceFrame& frame) {
    return warp_image(image, shape_instance(pdm, p), frame.reference, tri, frame);
}

WarpJacobian warp_jacobian(const PointDistributionModel& pdm, const Eigen::VectorXd& p,
                           const Triangulation& tri, const ReferenceFrame& frame) {
    if (p.size() != pdm.n_total())
        throw DimensionError("warp_jacobian: expected " + std::to_string(pdm.n_total()) +
                             " parameters, got " + std::to_string(p.size()));
    require_same_landmarks(pdm.mean_shape, frame.reference, "warp_jacobian");

    const int F = frame.size();
    const int n = pdm.n_total();
    WarpJacobian jac;
    jac.dx = Eigen::MatrixXd::Zero(F, n);
    jac.dy = Eigen::MatrixXd::Zero(F, n);
    for (int f = 0; f < F; ++f) {
        const auto& idx = tri.triangles[static_cast<std::size_t>(frame.tri_index[static_cast<std::size_t>(f)])];
        const auto& w = frame.bary[static_cast<std::size_t>(f)];
        for (int k = 0; k < 3; ++k) {
            jac.dx.row(f) += w[static_cast<std::size_t>(k)] * pdm.basis.row(2 * idx[static_cast<std::size_t>(k)]);
            jac.dy.row(f) += w[static_cast<std::size_t>(k)] * pdm.basis.row(2 * idx[static_cast<std::size_t>(k)] + 1);
        }
    }
    return jac;
}

Eigen::VectorXd compose_shapes(const PointDistributionModel& pdm, const Eigen::VectorXd& p_current,
                               const Eigen::VectorXd& delta_p, ComposeMode mode) {
    if (p_current.size() != pdm.n_total() || delta_p.size() != pdm.n_total())
        throw DimensionError("compose_shapes: parameter vectors must have length " +
                             std::to_string(pdm.n_total()));
    Eigen::VectorXd inc = (mode == ComposeMode::forward) ? delta_p : Eigen::VectorXd(-delta_p);
    // Displacement field of the incremental warp, applied to the current
    // instance at the landmarks, then re-projected onto the basis.
    Eigen::VectorXd displaced =
        shape_instance(pdm, p_current).to_vector() + (shape_instance(pdm, inc).to_vector() - pdm.mean_shape.to_vector());
    return project_shape(pdm, Shape::from_vector(displaced));
}

RenderStats render_texture_to_image(const Eigen::VectorXd& texture, const Shape& instance,
                                    const Triangulation& tri, const ReferenceFrame& frame,
                                    ImageF64& out) {
    require_same_landmarks(instance, frame.reference, "render_texture_to_image");
    ImageF64 raster = texture_to_raster(frame, texture, true);

    RenderStats stats;
    for (int t = 0; t < tri.size(); ++t) {
        const auto& idx = tri.triangles[static_cast<std::size_t>(t)];
        const Vec2& a = instance[idx[0]];
        const Vec2& b = instance[idx[1]];
        const Vec2& c = instance[idx[2]];
        if (std::abs(triangle_area(a, b, c)) < 1e-9) {
            ++stats.degenerate_triangles;
            continue;
        }
        const Vec2& ra = frame.reference[idx[0]];
        const Vec2& rb = frame.reference[idx[1]];
        const Vec2& rc = frame.reference[idx[2]];

        int x0 = std::max(0, static_cast<int>(std::floor(std::min({a.x, b.x, c.x}))));
        int x1 = std::min(out.width - 1, static_cast<int>(std::ceil(std::max({a.x, b.x, c.x}))));
        int y0 = std::max(0, static_cast<int>(std::floor(std::min({a.y, b.y, c.y}))));
        int y1 = std::min(out.height - 1, static_cast<int>(std::ceil(std::max({a.y, b.y, c.y}))));
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                auto w = barycentric({static_cast<double>(x), static_cast<double>(y)}, a, b, c);
                if (w[0] < -1e-9 || w[1] < -1e-9 || w[2] < -1e-9) continue;
                Vec2 q = ra * w[0] + rb * w[1] + rc * w[2];
                BilinearSample s = sample_bilinear(raster, q.x, q.y);
                out.at(x, y) = s.value;
                ++stats.pixels_written;
            }
        }
    }
    return stats;
}

} // namespace aam
