#pragma once

#include <vector>

#include <Eigen/Dense>

#include "aam/frame.hpp"
#include "aam/image.hpp"
#include "aam/pdm.hpp"
#include "aam/shape.hpp"
#include "aam/triangulation.hpp"

namespace aam {

// Linear texture model t = t_mean + A c over the reference-frame mask.
struct AppearanceModel {
    Eigen::VectorXd mean_texture; // F
    Eigen::MatrixXd basis;        // F x m, orthonormal columns
    Eigen::VectorXd eigenvalues;  // m, non-increasing
    ReferenceFrame frame;
    Triangulation tri;
    bool photometric_normalized = true; // training textures zero-mean unit-norm
    bool truncated = false;

    int size() const { return static_cast<int>(mean_texture.size()); }
    int modes() const { return static_cast<int>(basis.cols()); }
};

struct AppearanceBuildConfig {
    int resolution = 64;
    double margin = 2.0;
    int n_components = -1;          // PCA mode count; negative = full rank
    double variance_fraction = 0.0; // in (0,1] picks the smallest count reaching it
    bool photometric_normalization = true;
};

// Zero-mean, unit-norm in place; returns {mean, norm} so callers can undo it.
struct TextureNormalization {
    double mean = 0.0;
    double norm = 1.0;
};
TextureNormalization normalize_texture(Eigen::VectorXd& t);

// Warp every training image to the reference frame of the PDM mean shape,
// optionally normalize, then PCA.
AppearanceModel build_appearance_model(const std::vector<ImageF64>& images,
                                       const std::vector<Shape>& shapes,
                                       const PointDistributionModel& pdm,
                                       const AppearanceBuildConfig& config = {});

Eigen::VectorXd appearance_instance(const AppearanceModel& am, const Eigen::VectorXd& c);
Eigen::VectorXd project_texture(const AppearanceModel& am, const Eigen::VectorXd& t);

} // namespace aam
