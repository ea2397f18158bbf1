#pragma once

#include <cstdint>
#include <vector>

#include "aam/dataset.hpp"

namespace aam {

// Procedural face generator. 29 landmarks in a fixed layout:
//   0-8   jaw, left ear to chin to right ear
//   9-14  brows, three per side (outer, mid, inner; left then right)
//   15-20 eyes (outer, center, inner on the left; inner, center, outer on
//          the right), eye centers at 16 and 19
//   21-24 nose (bridge, left nostril, tip, right nostril)
//   25-28 mouth (left corner, top, right corner, bottom)
struct SynthParams {
    int resolution = 128;
    double expression = 0.0;   // [-1, 1]: mouth opening and brow raise
    double identity = 0.0;     // [-1, 1]: face aspect (width) variation
    double illumination = 0.0; // [-1, 1]: lateral shading direction/strength
    double pose_dx = 0.0;      // translation, pixels
    double pose_dy = 0.0;
    double pose_scale = 1.0;
    double pose_theta = 0.0; // radians, about the image center
};

inline constexpr int kSynthLandmarks = 29;
inline constexpr int kSynthLeftEyeCenter = 16;
inline constexpr int kSynthRightEyeCenter = 19;

// Deterministic in (params, seed); the seed adds small smooth landmark
// jitter so a corpus spans more than the explicit knobs.
AnnotatedImage synth_face(const SynthParams& params, std::uint64_t seed);

// A seeded corpus with per-face knob draws; the generative knob values are
// returned alongside the records for evaluation.
struct SynthCorpus {
    std::vector<AnnotatedImage> records;
    std::vector<double> expression;
    std::vector<double> identity;
    std::vector<double> illumination;
};

SynthCorpus synth_corpus(int n, std::uint64_t seed, int resolution = 128);

} // namespace aam
