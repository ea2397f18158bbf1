#include "aam/augment.hpp"

#include <algorithm>
#include <cmath>

#include "aam/errors.hpp"
#include "aam/rng.hpp"

namespace aam {

namespace {

std::uint8_t to_gray(double v) {
    return static_cast<std::uint8_t>(std::lround(std::min(255.0, std::max(0.0, v))));
}

} // namespace

AugmentResult augment(const AnnotatedImage& input, const AugmentOps& ops, std::uint64_t seed) {
    if (input.image.width <= 0 || input.image.height <= 0)
        throw DimensionError("cannot augment an empty image");

    AugmentResult res;
    res.record = input;
    ImageU8& img = res.record.image;
    const int w = img.width, h = img.height;

    if (ops.lighting) {
        for (std::uint8_t& px : img.pixels) px = to_gray(ops.gain * px + ops.bias);
    }

    if (ops.occlusion) {
        // Clip the requested box to the image; pixel (x, y) counts as covered
        // when its center lies inside the box.
        int rx0 = static_cast<int>(std::ceil(ops.box.x - 0.5));
        int ry0 = static_cast<int>(std::ceil(ops.box.y - 0.5));
        int rx1 = static_cast<int>(std::ceil(ops.box.x + ops.box.w - 0.5));
        int ry1 = static_cast<int>(std::ceil(ops.box.y + ops.box.h - 0.5));
        res.occlusion_clipped = rx0 < 0 || ry0 < 0 || rx1 > w || ry1 > h;
        int x0 = std::max(0, rx0), y0 = std::max(0, ry0);
        int x1 = std::min(w, rx1), y1 = std::min(h, ry1);
        if (x1 > x0 && y1 > y0) {
            res.occlusion_applied = true;
            res.occlusion_box = FaceBox{static_cast<double>(x0), static_cast<double>(y0),
                                        static_cast<double>(x1 - x0), static_cast<double>(y1 - y0)};
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) {
                    img.at(x, y) = ops.fill;
                    ++res.occluded_pixels;
                }
        }
    }

    if (ops.noise && ops.sigma > 0.0) {
        Rng rng(seed);
        for (std::uint8_t& px : img.pixels) px = to_gray(px + ops.sigma * rng.normal());
    }

    return res;
}

} // namespace aam
