#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aam/image.hpp"
#include "aam/shape.hpp"

namespace aam {

struct FaceBox {
    double x = 0.0, y = 0.0, w = 0.0, h = 0.0;
    double area() const { return w * h; }
};

// One image with its landmark annotation and (optionally) a face box.
struct AnnotatedImage {
    ImageU8 image;
    Shape shape;
    std::string source_path;
    std::optional<FaceBox> bbox;
};

enum class Split : std::uint8_t { train, validation, test };

struct SplitFractions {
    double train = 0.8;
    double validation = 0.0;
    double test = 0.2;
};

struct Dataset {
    std::vector<AnnotatedImage> records;
    std::vector<Split> split; // one entry per record
    std::uint64_t seed = 0;

    std::vector<int> indices_of(Split s) const;
};

// Seeded shuffle followed by contiguous train/validation/test assignment.
// Fractions must sum to 1 (1e-9 slack); the record list must be non-empty.
Dataset split_dataset(std::vector<AnnotatedImage> records, const SplitFractions& fractions,
                      std::uint64_t seed);

// Distance between the eye centers. Defined for the 29-landmark synthetic
// layout (centers at 16 and 19) and the 68-landmark annotation convention
// (outer eye corners 36 and 45, zero-based); other landmark counts throw.
double inter_ocular_distance(const Shape& shape);

// Similarity-fit of the mean shape onto the ground truth, then seeded
// translation and scale noise proportional to magnitude * inter-ocular
// distance. magnitude 0 returns the plain alignment. The noise constants are
// calibrated so the mean landmark displacement from the unperturbed
// alignment is approximately magnitude * inter-ocular distance.
Shape perturb_init(const Shape& mean_shape, const Shape& ground_truth, double magnitude,
                   std::uint64_t seed);

// Manifest: one `image_path,pts_path[,bbox]` line per record, paths relative
// to the manifest's directory, bbox encoded as `x:y:w:h`.
std::vector<AnnotatedImage> load_manifest(const std::string& manifest_path);
void save_manifest(const std::string& manifest_path, const std::vector<AnnotatedImage>& records,
                   const std::vector<std::string>& image_paths,
                   const std::vector<std::string>& pts_paths);

} // namespace aam
