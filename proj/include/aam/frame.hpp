#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "aam/image.hpp"
#include "aam/shape.hpp"
#include "aam/triangulation.hpp"

namespace aam {

// Pixel domain of the reference (mean) shape: the masked region inside its
// triangulation, with a precomputed triangle + barycentric table per masked
// pixel. Texture vectors are indexed by `pixel_index`.
struct ReferenceFrame {
    int width = 0, height = 0;
    Shape reference; // landmark positions in frame pixel coordinates

    std::vector<std::uint8_t> mask; // width*height, row-major
    std::vector<int> pixel_index;   // width*height, -1 outside the mask

    // Parallel arrays over masked pixels f = 0..F-1.
    std::vector<int> px, py;
    std::vector<int> tri_index;
    std::vector<std::array<double, 3>> bary;

    // Map from model (normalized) coordinates into this frame:
    // frame = model * model_scale + model_offset.
    double model_scale = 1.0;
    Vec2 model_offset{0.0, 0.0};

    int size() const { return static_cast<int>(px.size()); }
    bool inside(int x, int y) const {
        return x >= 0 && y >= 0 && x < width && y < height &&
               mask[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)] != 0;
    }
    int index_at(int x, int y) const {
        return pixel_index[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
    }
};

// Scale + center `mean` (a normalized model shape) into a resolution x
// resolution frame with `margin` pixels kept clear of the border, then build
// the mask and barycentric tables from its triangulation.
ReferenceFrame build_reference_frame(const Shape& mean, const Triangulation& tri, int resolution,
                                     double margin = 2.0);

// Same tables for a shape already expressed in pixel coordinates of a
// width x height raster (used for per-level frames and tests).
ReferenceFrame build_reference_frame_at(const Shape& reference_in_frame, const Triangulation& tri,
                                        int width, int height);

// Expand a texture vector to a raster. Unmasked pixels neighbouring the mask
// are filled with the mean of their masked neighbours when `dilate` is set, so
// bilinear sampling at the mask boundary does not bleed zeros.
ImageF64 texture_to_raster(const ReferenceFrame& frame, const Eigen::VectorXd& texture,
                           bool dilate = true);

} // namespace aam
