#pragma once

#include <vector>

#include <Eigen/Dense>

#include "aam/shape.hpp"

namespace aam {

// Linear shape model s = s_mean + S p. The first n_similarity columns of S are
// orthonormalized pose modes (x/y translation, scale, rotation differentials
// of the mean shape); the rest are PCA deformation modes.
struct PointDistributionModel {
    Shape mean_shape;
    Eigen::MatrixXd basis;       // 2v x n_total
    Eigen::VectorXd eigenvalues; // per PCA mode, non-increasing
    int n_similarity = 4;
    bool truncated = false; // requested more PCA modes than the data rank

    int n_landmarks() const { return mean_shape.size(); }
    int n_total() const { return static_cast<int>(basis.cols()); }
    int n_pca() const { return n_total() - n_similarity; }
};

// PCA on Procrustes-aligned shapes with the 4 similarity modes prepended.
// `n_components` counts PCA modes only (negative = keep full rank);
// `variance_fraction` in (0, 1] picks the smallest count reaching it.
PointDistributionModel build_pdm(const std::vector<Shape>& aligned_shapes, int n_components = -1,
                                 double variance_fraction = 0.0);

Shape shape_instance(const PointDistributionModel& pdm, const Eigen::VectorXd& p);

// p = S^T (s - s_mean). Any direct similarity transform of the mean shape lies
// exactly in the similarity-mode span, so its projection has zero deformation
// coefficients.
Eigen::VectorXd project_shape(const PointDistributionModel& pdm, const Shape& s);

} // namespace aam
