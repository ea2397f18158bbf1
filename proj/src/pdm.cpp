#include "aam/pdm.hpp"

#include <cmath>

#include "aam/errors.hpp"
#include "aam/pca.hpp"

namespace aam {

namespace {

// x/y translation, scale and rotation differentials of the (centered) mean,
// Gram-Schmidt orthonormalized in that order.
Eigen::MatrixXd similarity_modes(const Shape& mean) {
    const int v = mean.size();
    const int d = 2 * v;
    Eigen::MatrixXd q(d, 4);
    Eigen::VectorXd mvec = mean.to_vector();
    for (int i = 0; i < v; ++i) {
        q(2 * i, 0) = 1.0;
        q(2 * i + 1, 0) = 0.0;
        q(2 * i, 1) = 0.0;
        q(2 * i + 1, 1) = 1.0;
        q(2 * i, 2) = mvec[2 * i];
        q(2 * i + 1, 2) = mvec[2 * i + 1];
        q(2 * i, 3) = -mvec[2 * i + 1];
        q(2 * i + 1, 3) = mvec[2 * i];
    }
    for (int c = 0; c < 4; ++c) {
        for (int prev = 0; prev < c; ++prev) q.col(c) -= q.col(prev).dot(q.col(c)) * q.col(prev);
        double n = q.col(c).norm();
        if (n < 1e-12) throw DegenerateGeometryError("degenerate mean shape: similarity modes collapse");
        q.col(c) /= n;
    }
    return q;
}

} // namespace

PointDistributionModel build_pdm(const std::vector<Shape>& aligned_shapes, int n_components,
                                 double variance_fraction) {
    const int n = static_cast<int>(aligned_shapes.size());
    if (n < 2) throw InsufficientDataError("build_pdm needs at least 2 aligned shapes");
    for (int i = 1; i < n; ++i) require_same_landmarks(aligned_shapes[0], aligned_shapes[i], "build_pdm");
    const int v = aligned_shapes[0].size();
    const int d = 2 * v;

    Eigen::VectorXd meanv = Eigen::VectorXd::Zero(d);
    for (const Shape& s : aligned_shapes) meanv += s.to_vector();
    meanv /= static_cast<double>(n);

    PointDistributionModel pdm;
    pdm.mean_shape = Shape::from_vector(meanv);
    Eigen::MatrixXd q = similarity_modes(pdm.mean_shape);

    // Deformation PCA runs on the residual after removing the pose span.
    Eigen::MatrixXd data(d, n);
    for (int j = 0; j < n; ++j) data.col(j) = aligned_shapes[static_cast<std::size_t>(j)].to_vector() - meanv;
    data -= q * (q.transpose() * data);

    // Aligned shapes have unit centroid size, so anything below 1e-9 is
    // alignment rounding, not deformation.
    PcaResult pca = pca_columns(data, n_components, variance_fraction, 1e-9);
    pdm.truncated = pca.truncated;
    pdm.eigenvalues = pca.eigenvalues;

    const int m = static_cast<int>(pca.basis.cols());
    pdm.basis.resize(d, 4 + m);
    pdm.basis.leftCols(4) = q;
    pdm.basis.rightCols(m) = pca.basis;
    // One re-orthogonalization pass keeps the full basis orthonormal to
    // tighter than the 1e-8 contract even for noisy data.
    for (int c = 4; c < 4 + m; ++c) {
        for (int prev = 0; prev < c; ++prev)
            pdm.basis.col(c) -= pdm.basis.col(prev).dot(pdm.basis.col(c)) * pdm.basis.col(prev);
        double nrm = pdm.basis.col(c).norm();
        if (nrm < 1e-12) throw NumericError("build_pdm: deformation mode collapsed under re-orthogonalization");
        pdm.basis.col(c) /= nrm;
    }
    pdm.n_similarity = 4;
    return pdm;
}

Shape shape_instance(const PointDistributionModel& pdm, const Eigen::VectorXd& p) {
    if (p.size() != pdm.n_total())
        throw DimensionError("shape_instance: expected " + std::to_string(pdm.n_total()) +
                             " parameters, got " + std::to_string(p.size()));
    return Shape::from_vector(pdm.mean_shape.to_vector() + pdm.basis * p);
}

Eigen::VectorXd project_shape(const PointDistributionModel& pdm, const Shape& s) {
    require_same_landmarks(pdm.mean_shape, s, "project_shape");
    return pdm.basis.transpose() * (s.to_vector() - pdm.mean_shape.to_vector());
}

} // namespace aam
