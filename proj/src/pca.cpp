#include "aam/pca.hpp"

#include <cmath>

namespace aam {

PcaResult pca_columns(const Eigen::MatrixXd& centered, int n_components, double variance_fraction,
                      double min_sigma) {
    const Eigen::Index n = centered.cols();
    PcaResult res;
    if (n == 0) return res;

    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
    const Eigen::VectorXd& sv = svd.singularValues();
    const Eigen::Index k_max = sv.size();

    Eigen::VectorXd lambda(k_max);
    for (Eigen::Index i = 0; i < k_max; ++i) lambda[i] = sv[i] * sv[i] / static_cast<double>(n);
    res.total_variance = lambda.sum();

    // Rank: relative floor for trailing noise modes, plus an absolute floor so
    // data that is constant up to rounding collapses to rank zero.  Callers
    // supply min_sigma from the known scale of their samples.
    double floor = (k_max > 0) ? 1e-12 * lambda[0] : 0.0;
    floor = std::max(floor, min_sigma * min_sigma / static_cast<double>(n));
    Eigen::Index rank = 0;
    while (rank < k_max && lambda[rank] > floor && lambda[rank] > 0.0) ++rank;
    res.numeric_rank = static_cast<int>(rank);

    Eigen::Index keep = rank;
    if (variance_fraction > 0.0 && variance_fraction <= 1.0 && res.total_variance > 0.0) {
        double acc = 0.0;
        Eigen::Index k = 0;
        while (k < rank && acc < variance_fraction * res.total_variance - 1e-15 * res.total_variance) {
            acc += lambda[k];
            ++k;
        }
        keep = k;
    }
    if (n_components >= 0) {
        if (n_components > rank) res.truncated = true;
        keep = std::min<Eigen::Index>(n_components, keep);
    }

    res.basis = svd.matrixU().leftCols(keep);
    res.eigenvalues = lambda.head(keep);
    res.retained_fraction = (res.total_variance > 0.0) ? res.eigenvalues.sum() / res.total_variance : 1.0;

    for (Eigen::Index c = 0; c < keep; ++c) {
        Eigen::Index imax = 0;
        res.basis.col(c).cwiseAbs().maxCoeff(&imax);
        if (res.basis(imax, c) < 0.0) res.basis.col(c) = -res.basis.col(c);
    }
    return res;
}

} // namespace aam
