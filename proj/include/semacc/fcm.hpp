#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semacc/types.hpp"

namespace semacc {

/// Fuzzy C-means model over 2-D points. labels stays empty until
/// assign_cluster_labels fills it with one distinct class per cluster.
struct FuzzyClusterModel {
    Matrix centroids;    // c x 2
    double fuzzifier = 2.0;
    Matrix memberships;  // n x c, rows sum to 1
    std::vector<double> objective_trace;  // J per iteration, non-increasing
    std::vector<std::string> labels;      // c entries once assigned
    int iterations = 0;
    std::uint64_t seed_used = 0;  // seed of the restart that converged

    Eigen::Index cluster_count() const { return centroids.rows(); }
    bool labels_assigned() const { return !labels.empty(); }
};

struct PointClassification {
    std::string id;
    std::string true_label;
    std::string predicted_label;
    Vector memberships;  // c entries
    bool correct = false;
};

struct ClassificationResult {
    std::vector<PointClassification> points;
    double accuracy = 0.0;  // fraction correct
};

struct FcmOptions {
    double fuzzifier = 2.0;   // must be > 1
    std::uint64_t seed = 0;
    double tol = 1e-5;        // max centroid displacement
    int max_iters = 300;
    int max_restarts = 5;     // on centroid collapse
};

/// Alternating membership/centroid updates from a seeded spread-out choice of
/// c distinct data points. Coincident centroids trigger a restart with the
/// next seed; after max_restarts the run fails with
/// Error(Errc::EmptyClusterCollapse).
FuzzyClusterModel fcm_fit(const Matrix& points, Eigen::Index c, const FcmOptions& options);

/// Membership vector of one point against fixed centroids, same formula as
/// the fit. A point at zero distance from a centroid gets all its mass there.
Vector fcm_membership(const Matrix& centroids, double fuzzifier, const Eigen::RowVector2d& point);

/// Hard-assigns each fit point to its argmax cluster, then labels clusters by
/// a greedy majority rule: repeatedly take the (cluster, class) pair with the
/// highest count among unlabeled clusters and unused classes. Ties break on
/// higher count, then lower cluster index, then smaller class label.
/// Requires at least c distinct classes.
std::vector<std::string> assign_cluster_labels(const FuzzyClusterModel& model,
                                               const std::vector<std::string>& real_labels);

/// Classifies each synthetic point to the label of its argmax-membership
/// cluster (ties to the lowest cluster index) and reports the fraction
/// correct.
ClassificationResult classify_synthetic(const FuzzyClusterModel& model, const Matrix& synth_coords,
                                        const std::vector<std::string>& synth_ids,
                                        const std::vector<std::string>& synth_labels);

/// Fraction of fit points whose hard cluster carries their true label.
double clustering_accuracy_real(const FuzzyClusterModel& model,
                                const std::vector<std::string>& real_labels);

}  // namespace semacc
