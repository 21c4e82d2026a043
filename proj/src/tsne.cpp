#include "semacc/tsne.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "semacc/error.hpp"
#include "semacc/rng.hpp"

namespace semacc {

void TsneConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(Errc::InvalidConfig, what); };
    if (!(perplexity > 0.0)) fail("perplexity must be positive");
    if (n_iter < 1) fail("n_iter must be positive");
    if (!(learning_rate > 0.0)) fail("learning_rate must be positive");
    if (!(early_exaggeration_factor > 0.0)) fail("early_exaggeration_factor must be positive");
    if (early_exaggeration_iters < 0 || early_exaggeration_iters > n_iter) {
        fail("early_exaggeration_iters must be in [0, n_iter]");
    }
    if (momentum_initial < 0.0 || momentum_initial >= 1.0) fail("momentum_initial must be in [0,1)");
    if (momentum_final < 0.0 || momentum_final >= 1.0) fail("momentum_final must be in [0,1)");
    if (momentum_switch_iter < 0 || momentum_switch_iter > n_iter) {
        fail("momentum_switch_iter must be in [0, n_iter]");
    }
    if (!(perplexity_tolerance > 0.0)) fail("perplexity_tolerance must be positive");
    if (max_calibration_iters < 1) fail("max_calibration_iters must be positive");
}

namespace {

// Entropy (nats) and normalized probabilities of p_j ~ exp(-beta * d2_j),
// computed with a max shift so the largest weight is exactly 1.
double row_entropy(const Vector& d2, double beta, Vector& probs_out) {
    const Eigen::Index m = d2.size();
    const double d2_min = d2.minCoeff();
    double sum = 0.0;
    double weighted = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        double delta = d2(j) - d2_min;
        double w = std::exp(-beta * delta);
        probs_out(j) = w;
        sum += w;
        weighted += w * delta;
    }
    probs_out /= sum;
    // H = ln(sum) + beta * E[delta]
    return std::log(sum) + beta * weighted / sum;
}

}  // namespace

CalibratedRow calibrate_row(const Vector& distances_sq, double perplexity, double tolerance,
                            int max_iters) {
    const Eigen::Index m = distances_sq.size();
    if (m < 1) {
        throw Error(Errc::InvalidConfig, "calibrate_row needs at least one distance");
    }
    if (distances_sq.maxCoeff() <= 0.0) {
        throw Error(Errc::AllZeroDistances, "all pairwise distances are zero");
    }

    CalibratedRow best;
    best.probs = Vector(m);
    Vector probs(m);

    double beta = 1.0;
    double best_err = std::numeric_limits<double>::infinity();
    int evals = 0;

    auto evaluate = [&](double b) {
        double h = row_entropy(distances_sq, b, probs);
        double realized = std::exp(h);
        ++evals;
        double err = std::abs(realized - perplexity);
        if (err < best_err) {
            best_err = err;
            best.probs = probs;
            best.precision = b;
            best.realized_perplexity = realized;
        }
        return realized;
    };

    double realized = evaluate(beta);
    if (best_err <= tolerance) {
        best.converged = true;
        return best;
    }

    // Bracket: realized perplexity decreases as beta grows.
    double lo = beta, hi = beta;
    if (realized > perplexity) {
        while (evals < max_iters) {
            lo = hi;
            hi *= 2.0;
            if (evaluate(hi) <= perplexity || best_err <= tolerance) break;
        }
    } else {
        while (evals < max_iters) {
            hi = lo;
            lo *= 0.5;
            if (evaluate(lo) >= perplexity || best_err <= tolerance) break;
        }
    }

    while (best_err > tolerance && evals < max_iters) {
        double mid = 0.5 * (lo + hi);
        if (evaluate(mid) > perplexity) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    best.converged = best_err <= tolerance;
    return best;
}

AffinityResult build_affinities(const Matrix& points, const TsneConfig& config) {
    config.validate();
    const Eigen::Index n = points.rows();
    if (n < 3) {
        throw Error(Errc::InvalidConfig, "need at least 3 points, got " + std::to_string(n));
    }
    if (!(config.perplexity < static_cast<double>(n))) {
        throw Error(Errc::InvalidConfig, "perplexity " + std::to_string(config.perplexity) +
                                             " must be below the point count " + std::to_string(n));
    }

    Matrix d2(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d2(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double dist = (points.row(i) - points.row(j)).squaredNorm();
            d2(i, j) = dist;
            d2(j, i) = dist;
        }
    }

    AffinityResult result;
    result.row_perplexity.resize(n);
    Matrix conditional = Matrix::Zero(n, n);
    Vector row_d2(n - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index w = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) row_d2(w++) = d2(i, j);
        }
        CalibratedRow row =
            calibrate_row(row_d2, config.perplexity, config.perplexity_tolerance,
                          config.max_calibration_iters);
        result.row_perplexity[i] = row.realized_perplexity;
        if (!row.converged) result.failed_rows.push_back(i);
        w = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) conditional(i, j) = row.probs(w++);
        }
    }

    result.P = Matrix(n, n);
    const double scale = 1.0 / (2.0 * static_cast<double>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        result.P(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double p = (conditional(i, j) + conditional(j, i)) * scale;
            result.P(i, j) = p;
            result.P(j, i) = p;
        }
    }
    return result;
}

namespace {

// Student-t kernel values num_ij = 1/(1+||y_i-y_j||^2) and their total.
void student_t_kernel(const Matrix& y, Matrix& num, double& z) {
    const Eigen::Index n = y.rows();
    z = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        num(i, i) = 0.0;
        double row_sum = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double dx = y(i, 0) - y(j, 0);
            double dy = y(i, 1) - y(j, 1);
            double v = 1.0 / (1.0 + dx * dx + dy * dy);
            num(i, j) = v;
            num(j, i) = v;
            row_sum += v;
        }
        z += 2.0 * row_sum;
    }
}

}  // namespace

namespace {

void gradient_into(const Matrix& P, const Matrix& y, double p_multiplier, Matrix& num,
                   Matrix& grad) {
    const Eigen::Index n = y.rows();
    double z = 0.0;
    student_t_kernel(y, num, z);
    const double inv_z = 1.0 / z;
    for (Eigen::Index i = 0; i < n; ++i) {
        double gx = 0.0, gy = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            double p = std::max(P(i, j) * p_multiplier, kProbFloor);
            double q = std::max(num(i, j) * inv_z, kProbFloor);
            double w = (p - q) * num(i, j);
            gx += w * (y(i, 0) - y(j, 0));
            gy += w * (y(i, 1) - y(j, 1));
        }
        grad(i, 0) = 4.0 * gx;
        grad(i, 1) = 4.0 * gy;
    }
}

}  // namespace

Matrix kl_gradient(const Matrix& P, const Matrix& embedding, double p_multiplier) {
    const Eigen::Index n = embedding.rows();
    if (P.rows() != n || P.cols() != n || embedding.cols() != 2) {
        throw Error(Errc::DimensionMismatch, "affinity/embedding shapes disagree");
    }
    Matrix num(n, n);
    Matrix grad(n, 2);
    gradient_into(P, embedding, p_multiplier, num, grad);
    return grad;
}

double kl_divergence(const Matrix& P, const Matrix& embedding) {
    const Eigen::Index n = embedding.rows();
    if (P.rows() != n || P.cols() != n || embedding.cols() != 2) {
        throw Error(Errc::DimensionMismatch, "affinity/embedding shapes disagree");
    }
    Matrix num(n, n);
    double z = 0.0;
    student_t_kernel(embedding, num, z);
    const double inv_z = 1.0 / z;

    double kl = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            double p = std::max(P(i, j), kProbFloor);
            double q = std::max(num(i, j) * inv_z, kProbFloor);
            kl += p * std::log(p / q);
        }
    }
    return kl;
}

TsneResult tsne_embed(const Matrix& points, const TsneConfig& config) {
    AffinityResult aff = build_affinities(points, config);
    const Eigen::Index n = points.rows();

    TsneResult result;
    result.calibration_failures = aff.failed_rows;

    Rng rng(config.seed);
    Matrix y(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        y(i, 0) = 1e-4 * rng.gaussian();
        y(i, 1) = 1e-4 * rng.gaussian();
    }

    Matrix velocity = Matrix::Zero(n, 2);
    Matrix gains = Matrix::Ones(n, 2);
    constexpr double kMinGain = 0.01;
    Matrix num(n, n);
    Matrix grad(n, 2);
    if (config.record_kl_trace) result.kl_trace.reserve(config.n_iter);

    for (int iter = 0; iter < config.n_iter; ++iter) {
        const bool exaggerating = iter < config.early_exaggeration_iters;
        const double multiplier = exaggerating ? config.early_exaggeration_factor : 1.0;
        const double momentum =
            iter < config.momentum_switch_iter ? config.momentum_initial : config.momentum_final;

        gradient_into(aff.P, y, multiplier, num, grad);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index d = 0; d < 2; ++d) {
                // A step fighting the current velocity direction earns a larger
                // per-coordinate gain; one reinforcing it decays the gain. This keeps
                // the fixed learning rate stable across problem sizes.
                const bool opposing = (grad(i, d) > 0.0) != (velocity(i, d) > 0.0);
                double g = opposing ? gains(i, d) + 0.2 : gains(i, d) * 0.8;
                gains(i, d) = std::max(g, kMinGain);
                velocity(i, d) =
                    momentum * velocity(i, d) - config.learning_rate * gains(i, d) * grad(i, d);
            }
        }
        y += velocity;
        Eigen::RowVector2d center = y.colwise().mean();
        y.rowwise() -= center;

        if (!y.allFinite()) {
            throw Error(Errc::NumericalDivergence,
                        "coordinates became non-finite at iteration " + std::to_string(iter));
        }
        if (config.record_kl_trace) {
            result.kl_trace.push_back(kl_divergence(aff.P, y));
        }
    }

    result.coords = std::move(y);
    return result;
}

}  // namespace semacc
