#pragma once

#include <cstdint>

#include "aam/dataset.hpp"

namespace aam {

// Pixel-only corruption pipeline: lighting, then occlusion, then noise.
// Landmarks are never touched.
struct AugmentOps {
    bool lighting = false;
    double gain = 1.0;
    double bias = 0.0;

    bool occlusion = false;
    FaceBox box;              // requested occluder, pixel units
    std::uint8_t fill = 0;

    bool noise = false;
    double sigma = 0.0; // gray levels, gaussian, seeded
};

struct AugmentResult {
    AnnotatedImage record;
    bool occlusion_applied = false;
    FaceBox occlusion_box;    // after clipping to the image
    bool occlusion_clipped = false;
    int occluded_pixels = 0;  // pixels actually painted
};

AugmentResult augment(const AnnotatedImage& input, const AugmentOps& ops, std::uint64_t seed);

} // namespace aam
