#include "semacc/pca.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "semacc/error.hpp"

namespace semacc {

namespace {

constexpr double kNegligibleVariance = 1e-14;

// Flip rows so the entry of largest magnitude is non-negative; ties go to the
// lowest column index.
void apply_sign_convention(Matrix& components) {
    for (Eigen::Index r = 0; r < components.rows(); ++r) {
        Eigen::Index best = 0;
        double best_abs = -1.0;
        for (Eigen::Index c = 0; c < components.cols(); ++c) {
            double a = std::abs(components(r, c));
            if (a > best_abs) {
                best_abs = a;
                best = c;
            }
        }
        if (components(r, best) < 0.0) components.row(r) = -components.row(r);
    }
}

// Fills rows [filled, k) with canonical basis vectors orthogonalized against
// the rows above them. Needed when the data rank is below k (e.g. constant
// data) and the eigendecomposition gives no usable direction.
void complete_basis(Matrix& components, Eigen::Index filled) {
    const Eigen::Index d = components.cols();
    Eigen::Index candidate = 0;
    for (Eigen::Index r = filled; r < components.rows(); ++r) {
        bool placed = false;
        for (; candidate < d && !placed; ++candidate) {
            Vector v = Vector::Zero(d);
            v(candidate) = 1.0;
            for (Eigen::Index p = 0; p < r; ++p) {
                v -= components.row(p).dot(v) * components.row(p).transpose();
            }
            double norm = v.norm();
            if (norm > 1e-8) {
                components.row(r) = v.transpose() / norm;
                placed = true;
            }
        }
        if (!placed) {
            throw Error(Errc::KTooLarge, "cannot complete an orthonormal basis");
        }
    }
}

}  // namespace

PcaModel pca_fit(const Matrix& data, Eigen::Index k) {
    const Eigen::Index n = data.rows();
    const Eigen::Index d = data.cols();
    if (k < 1 || k > std::min(n, d)) {
        throw Error(Errc::KTooLarge, "k=" + std::to_string(k) + " with n=" + std::to_string(n) +
                                         ", D=" + std::to_string(d));
    }
    if (!data.allFinite()) {
        throw Error(Errc::NonFiniteValue, "pca_fit input contains NaN or Inf");
    }

    PcaModel model;
    model.mean = data.colwise().mean();
    Matrix centered = data.rowwise() - model.mean.transpose();
    const double divisor = n > 1 ? static_cast<double>(n - 1) : 1.0;

    model.components = Matrix::Zero(k, d);
    model.explained_variance = Vector::Zero(k);

    if (d <= n) {
        Matrix cov = (centered.transpose() * centered) / divisor;
        Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
        // eigenvalues come back ascending
        for (Eigen::Index i = 0; i < k; ++i) {
            Eigen::Index src = d - 1 - i;
            model.explained_variance(i) = std::max(0.0, solver.eigenvalues()(src));
            model.components.row(i) = solver.eigenvectors().col(src).transpose();
        }
    } else {
        Matrix gram = (centered * centered.transpose()) / divisor;
        Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
        Eigen::Index filled = 0;
        for (Eigen::Index i = 0; i < k; ++i) {
            Eigen::Index src = n - 1 - i;
            double lambda = std::max(0.0, solver.eigenvalues()(src));
            Vector direction = centered.transpose() * solver.eigenvectors().col(src);
            double norm = direction.norm();
            if (lambda <= kNegligibleVariance || norm <= 1e-12) break;
            model.explained_variance(i) = lambda;
            model.components.row(i) = direction.transpose() / norm;
            ++filled;
        }
        complete_basis(model.components, filled);
    }

    apply_sign_convention(model.components);
    return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& data) {
    if (data.cols() != model.dim()) {
        throw Error(Errc::DimensionMismatch, "data D=" + std::to_string(data.cols()) +
                                                 ", model D=" + std::to_string(model.dim()));
    }
    return (data.rowwise() - model.mean.transpose()) * model.components.transpose();
}

}  // namespace semacc
