#include "aam/appearance.hpp"

#include <cmath>

#include "aam/errors.hpp"
#include "aam/pca.hpp"
#include "aam/warp.hpp"

namespace aam {

TextureNormalization normalize_texture(Eigen::VectorXd& t) {
    TextureNormalization n;
    if (t.size() == 0) return n;
    n.mean = t.mean();
    t.array() -= n.mean;
    n.norm = t.norm();
    if (n.norm < 1e-12) n.norm = 1.0;
    t /= n.norm;
    return n;
}

AppearanceModel build_appearance_model(const std::vector<ImageF64>& images,
                                       const std::vector<Shape>& shapes,
                                       const PointDistributionModel& pdm,
                                       const AppearanceBuildConfig& config) {
    if (images.empty()) throw InsufficientDataError("build_appearance_model: empty training set");
    if (images.size() != shapes.size())
        throw InsufficientDataError("build_appearance_model: image/shape counts differ");

    AppearanceModel am;
    am.tri = delaunay_triangulate(pdm.mean_shape);
    am.frame = build_reference_frame(pdm.mean_shape, am.tri, config.resolution, config.margin);
    am.photometric_normalized = config.photometric_normalization;

    const int F = am.frame.size();
    const int n = static_cast<int>(images.size());
    Eigen::MatrixXd textures(F, n);
    for (int j = 0; j < n; ++j) {
        WarpResult w = warp_image(images[static_cast<std::size_t>(j)], shapes[static_cast<std::size_t>(j)],
                                  am.frame.reference, am.tri, am.frame);
        Eigen::VectorXd t = w.texture;
        if (config.photometric_normalization) normalize_texture(t);
        textures.col(j) = t;
    }

    am.mean_texture = textures.rowwise().mean();
    textures.colwise() -= am.mean_texture;

    // Absolute noise floor scaled to the texture range: unit-norm samples when
    // photometric normalization is on, raw gray levels otherwise.
    double min_sigma = 1e-9 * std::max(1.0, am.mean_texture.cwiseAbs().maxCoeff());
    PcaResult pca = pca_columns(textures, config.n_components, config.variance_fraction, min_sigma);
    am.basis = pca.basis;
    am.eigenvalues = pca.eigenvalues;
    am.truncated = pca.truncated;
    return am;
}

Eigen::VectorXd appearance_instance(const AppearanceModel& am, const Eigen::VectorXd& c) {
    if (c.size() != am.modes())
        throw DimensionError("appearance_instance: expected " + std::to_string(am.modes()) +
                             " coefficients, got " + std::to_string(c.size()));
    return am.mean_texture + am.basis * c;
}

Eigen::VectorXd project_texture(const AppearanceModel& am, const Eigen::VectorXd& t) {
    if (t.size() != am.size())
        throw DimensionError("project_texture: expected texture length " + std::to_string(am.size()) +
                             ", got " + std::to_string(t.size()));
    return am.basis.transpose() * (t - am.mean_texture);
}

} // namespace aam
