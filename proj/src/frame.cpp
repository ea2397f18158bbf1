#include "aam/frame.hpp"

#include <cmath>

#include "aam/errors.hpp"

namespace aam {

ReferenceFrame build_reference_frame_at(const Shape& reference_in_frame, const Triangulation& tri,
                                        int width, int height) {
    if (width <= 0 || height <= 0) throw ConfigError("reference frame needs positive dimensions");
    ReferenceFrame f;
    f.width = width;
    f.height = height;
    f.reference = reference_in_frame;
    f.mask.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
    f.pixel_index.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), -1);

    const double tol = -1e-9;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            Vec2 p{static_cast<double>(x), static_cast<double>(y)};
            for (int t = 0; t < tri.size(); ++t) {
                const auto& idx = tri.triangles[static_cast<std::size_t>(t)];
                const Vec2& a = reference_in_frame[idx[0]];
                const Vec2& b = reference_in_frame[idx[1]];
                const Vec2& c = reference_in_frame[idx[2]];
                if (std::abs(triangle_area(a, b, c)) < 1e-12) continue;
                auto w = barycentric(p, a, b, c);
                if (w[0] >= tol && w[1] >= tol && w[2] >= tol) {
                    std::size_t lin = static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                                      static_cast<std::size_t>(x);
                    f.mask[lin] = 1;
                    f.pixel_index[lin] = static_cast<int>(f.px.size());
                    f.px.push_back(x);
                    f.py.push_back(y);
                    f.tri_index.push_back(t);
                    f.bary.push_back(w);
                    break;
                }
            }
        }
    }
    if (f.size() == 0) throw DegenerateGeometryError("reference frame mask is empty");
    return f;
}

ReferenceFrame build_reference_frame(const Shape& mean, const Triangulation& tri, int resolution,
                                     double margin) {
    if (resolution <= 0) throw ConfigError("reference frame needs a positive resolution");
    double xmin, ymin, xmax, ymax;
    mean.bounding_box(xmin, ymin, xmax, ymax);
    double w = xmax - xmin, h = ymax - ymin;
    double extent = std::max(w, h);
    if (extent <= 0.0) throw DegenerateGeometryError("mean shape has zero extent");
    double usable = static_cast<double>(resolution - 1) - 2.0 * margin;
    if (usable <= 0.0) throw ConfigError("reference frame margin leaves no usable pixels");
    double scale = usable / extent;

    Shape ref;
    ref.points.reserve(mean.points.size());
    Vec2 offset{margin + 0.5 * (usable - w * scale) - xmin * scale,
                margin + 0.5 * (usable - h * scale) - ymin * scale};
    for (const Vec2& p : mean.points) ref.points.push_back({p.x * scale + offset.x, p.y * scale + offset.y});

    ReferenceFrame f = build_reference_frame_at(ref, tri, resolution, resolution);
    f.model_scale = scale;
    f.model_offset = offset;
    return f;
}

ImageF64 texture_to_raster(const ReferenceFrame& frame, const Eigen::VectorXd& texture, bool dilate) {
    if (texture.size() != frame.size())
        throw DimensionError("texture_to_raster: texture length " + std::to_string(texture.size()) +
                             " does not match frame size " + std::to_string(frame.size()));
    ImageF64 img(frame.width, frame.height);
    for (int f = 0; f < frame.size(); ++f)
        img.at(frame.px[static_cast<std::size_t>(f)], frame.py[static_cast<std::size_t>(f)]) =
            texture[f];
    if (!dilate) return img;

    for (int y = 0; y < frame.height; ++y) {
        for (int x = 0; x < frame.width; ++x) {
            if (frame.inside(x, y)) continue;
            double sum = 0.0;
            int cnt = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    int nx = x + dx, ny = y + dy;
                    if ((dx | dy) != 0 && frame.inside(nx, ny)) {
                        sum += img.at(nx, ny);
                        ++cnt;
                    }
                }
            }
            if (cnt > 0) img.at(x, y) = sum / cnt;
        }
    }
    return img;
}

} // namespace aam
