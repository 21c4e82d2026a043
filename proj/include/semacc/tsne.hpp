#pragma once

#include <cstdint>
#include <vector>

#include "semacc/types.hpp"

namespace semacc {

/// Hyperparameters for the exact t-SNE run. Perplexity is the only value a
/// caller usually changes; the rest default to the customary settings for
/// momentum gradient descent with early exaggeration.
struct TsneConfig {
    double perplexity = 30.0;
    int n_iter = 1000;
    double learning_rate = 200.0;
    double early_exaggeration_factor = 12.0;
    int early_exaggeration_iters = 250;
    double momentum_initial = 0.5;
    double momentum_final = 0.8;
    int momentum_switch_iter = 250;
    std::uint64_t seed = 42;
    double perplexity_tolerance = 1e-3;  // absolute, on realized perplexity
    int max_calibration_iters = 64;
    bool record_kl_trace = false;

    /// Throws Error(Errc::InvalidConfig) on out-of-range fields.
    void validate() const;
};

/// One calibrated conditional distribution row p_{j|i}.
struct CalibratedRow {
    Vector probs;                // n-1 entries, sums to 1
    double precision = 1.0;      // beta = 1 / (2 sigma^2)
    double realized_perplexity = 0.0;
    bool converged = false;
};

/// Joint input affinities. P is symmetric with zero diagonal and entries
/// summing to 1; entries are stored unfloored (flooring at kProbFloor happens
/// at use inside the gradient and KL). failed_rows lists conditional rows
/// whose realized perplexity missed the target by more than the tolerance
/// after the calibration budget.
struct AffinityResult {
    Matrix P;  // n x n
    std::vector<double> row_perplexity;
    std::vector<Eigen::Index> failed_rows;
};

struct TsneResult {
    Matrix coords;  // n x 2, mean-centered
    std::vector<double> kl_trace;  // per iteration, empty unless recorded
    std::vector<Eigen::Index> calibration_failures;
};

/// Floor applied to P and Q entries before any log or division.
inline constexpr double kProbFloor = 1e-12;

/// Binary search on the Gaussian precision so that exp(entropy) of the row
/// matches the target perplexity within tolerance. The search starts at
/// precision 1, doubles/halves until the target is bracketed, then bisects;
/// the evaluation budget covers both phases. A row that misses tolerance
/// comes back with converged=false and the best-effort probabilities seen.
/// Throws Error(Errc::AllZeroDistances) if no distance is positive.
CalibratedRow calibrate_row(const Vector& distances_sq, double perplexity, double tolerance,
                            int max_iters);

/// Conditional rows calibrated per point, then symmetrized:
/// P_ij = (p_{j|i} + p_{i|j}) / (2n). Requires n >= 3 and perplexity < n.
AffinityResult build_affinities(const Matrix& points, const TsneConfig& config);

/// Analytic gradient of KL(P || Q) at the given 2-D coordinates, with
/// Student-t (one degree of freedom) low-dimensional affinities Q.
Matrix kl_gradient(const Matrix& P, const Matrix& embedding,
                   double p_multiplier = 1.0);

/// KL(P || Q) with the same flooring as the optimizer.
double kl_divergence(const Matrix& P, const Matrix& embedding);

/// Full embedding run: affinity construction, seeded Gaussian init
/// (sigma = 1e-4), early exaggeration, momentum gradient descent with
/// per-iteration mean centering. Deterministic for a fixed seed. Throws
/// Error(Errc::NumericalDivergence) if any coordinate becomes non-finite.
TsneResult tsne_embed(const Matrix& points, const TsneConfig& config);

}  // namespace semacc
