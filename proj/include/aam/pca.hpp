#pragma once

#include <Eigen/Dense>

namespace aam {

struct PcaResult {
    Eigen::MatrixXd basis;       // d x k, orthonormal columns
    Eigen::VectorXd eigenvalues; // k, non-increasing (divisor-N variances)
    double total_variance = 0.0;     // over the full spectrum, retained or not
    double retained_fraction = 1.0;  // sum of kept eigenvalues / total_variance
    int numeric_rank = 0;
    bool truncated = false; // requested more modes than the numeric rank
};

// PCA of mean-centered column samples (d x N). Keeps `n_components` modes
// (negative = all), or the smallest count reaching `variance_fraction` of the
// total when that is in (0, 1]. Singular values at or below `min_sigma` count
// as numerically zero, so constant-up-to-rounding data yields rank 0; pick it
// from the scale of the samples. Eigenvector sign is fixed by making each
// column's largest-magnitude entry positive.
PcaResult pca_columns(const Eigen::MatrixXd& centered, int n_components = -1,
                      double variance_fraction = 0.0, double min_sigma = 0.0);

} // namespace aam
