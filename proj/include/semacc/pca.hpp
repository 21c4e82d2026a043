#pragma once

#include "semacc/types.hpp"

namespace semacc {

/// Linear projection onto the top-k variance directions of the fit data.
///
/// components rows are pairwise orthonormal and ordered by non-increasing
/// explained_variance (sample variance, divisor n-1). Sign convention: the
/// entry of largest magnitude in each row is non-negative, so fits are
/// reproducible across runs and platforms with the same arithmetic.
struct PcaModel {
    Vector mean;             // D
    Matrix components;       // k x D
    Vector explained_variance;  // k, non-increasing, >= 0

    Eigen::Index dim() const { return components.cols(); }
    Eigen::Index rank() const { return components.rows(); }
};

/// Fits on n x D data. Requires 1 <= k <= min(n, D); throws
/// Error(Errc::KTooLarge) otherwise. Zero-variance data (all rows identical)
/// yields a valid model with zero explained variance. The eigendecomposition
/// runs on the covariance (D x D) or Gram (n x n) matrix, whichever is
/// smaller.
PcaModel pca_fit(const Matrix& data, Eigen::Index k);

/// Projects m x D rows to m x k: (x - mean) * components^T.
Matrix pca_transform(const PcaModel& model, const Matrix& data);

}  // namespace semacc
