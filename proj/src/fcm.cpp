#include "semacc/fcm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "semacc/error.hpp"
#include "semacc/rng.hpp"

namespace semacc {

namespace {

// Two centroids closer than this are considered collapsed.
constexpr double kCollapseEps = 1e-12;

bool centroids_collapsed(const Matrix& centroids) {
    for (Eigen::Index a = 0; a < centroids.rows(); ++a) {
        for (Eigen::Index b = a + 1; b < centroids.rows(); ++b) {
            if ((centroids.row(a) - centroids.row(b)).norm() < kCollapseEps) return true;
        }
    }
    return false;
}

// Seeded spread-out initialization: first centroid uniform, each next drawn
// with probability proportional to squared distance from the nearest centroid
// already chosen.
Matrix init_centroids(const Matrix& points, Eigen::Index c, Rng& rng) {
    const Eigen::Index n = points.rows();
    Matrix centroids(c, 2);
    std::vector<double> min_d2(n, 0.0);

    Eigen::Index first = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    centroids.row(0) = points.row(first);
    for (Eigen::Index i = 0; i < n; ++i) {
        min_d2[i] = (points.row(i) - centroids.row(0)).squaredNorm();
    }

    for (Eigen::Index j = 1; j < c; ++j) {
        double total = 0.0;
        for (double v : min_d2) total += v;
        Eigen::Index chosen = -1;
        if (total > 0.0) {
            double target = rng.uniform() * total;
            double cumulative = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                cumulative += min_d2[i];
                if (target < cumulative) {
                    chosen = i;
                    break;
                }
            }
            if (chosen < 0) {
                for (Eigen::Index i = n - 1; i >= 0; --i) {
                    if (min_d2[i] > 0.0) {
                        chosen = i;
                        break;
                    }
                }
            }
        }
        if (chosen < 0) {
            // no point is distinct from the chosen set; collapse is inevitable
            centroids.row(j) = centroids.row(0);
            continue;
        }
        centroids.row(j) = points.row(chosen);
        for (Eigen::Index i = 0; i < n; ++i) {
            min_d2[i] = std::min(min_d2[i], (points.row(i) - centroids.row(j)).squaredNorm());
        }
    }
    return centroids;
}

void memberships_into(const Matrix& points, const Matrix& centroids, double fuzzifier,
                      Matrix& memberships) {
    const Eigen::Index n = points.rows();
    const Eigen::Index c = centroids.rows();
    const double exponent = 2.0 / (fuzzifier - 1.0);
    Vector dist(c);
    for (Eigen::Index i = 0; i < n; ++i) {
        int zeros = 0;
        for (Eigen::Index j = 0; j < c; ++j) {
            dist(j) = (points.row(i) - centroids.row(j)).norm();
            if (dist(j) == 0.0) ++zeros;
        }
        if (zeros > 0) {
            for (Eigen::Index j = 0; j < c; ++j) {
                memberships(i, j) = dist(j) == 0.0 ? 1.0 / zeros : 0.0;
            }
            continue;
        }
        for (Eigen::Index j = 0; j < c; ++j) {
            double sum = 0.0;
            for (Eigen::Index k = 0; k < c; ++k) {
                sum += std::pow(dist(j) / dist(k), exponent);
            }
            // overflow in the ratio sum correctly drives the membership to 0
            memberships(i, j) = 1.0 / sum;
        }
    }
}

double objective(const Matrix& points, const Matrix& centroids, const Matrix& memberships,
                 double fuzzifier) {
    double j_total = 0.0;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        for (Eigen::Index j = 0; j < centroids.rows(); ++j) {
            double d2 = (points.row(i) - centroids.row(j)).squaredNorm();
            j_total += std::pow(memberships(i, j), fuzzifier) * d2;
        }
    }
    return j_total;
}

}  // namespace

FuzzyClusterModel fcm_fit(const Matrix& points, Eigen::Index c, const FcmOptions& options) {
    const Eigen::Index n = points.rows();
    if (points.cols() != 2) {
        throw Error(Errc::DimensionMismatch, "fcm_fit expects n x 2 points");
    }
    if (c < 1 || c > n) {
        throw Error(Errc::InvalidConfig,
                    "cluster count " + std::to_string(c) + " must be in [1, n=" + std::to_string(n) + "]");
    }
    if (!(options.fuzzifier > 1.0)) {
        throw Error(Errc::InvalidConfig, "fuzzifier must be > 1");
    }
    if (!points.allFinite()) {
        throw Error(Errc::NonFiniteValue, "fcm_fit input contains NaN or Inf");
    }

    for (int restart = 0; restart <= options.max_restarts; ++restart) {
        const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(restart);
        Rng rng(seed);

        FuzzyClusterModel model;
        model.fuzzifier = options.fuzzifier;
        model.seed_used = seed;
        model.centroids = init_centroids(points, c, rng);
        model.memberships = Matrix(n, c);

        if (c > 1 && centroids_collapsed(model.centroids)) continue;

        bool collapsed = false;
        for (int iter = 0; iter < options.max_iters; ++iter) {
            memberships_into(points, model.centroids, options.fuzzifier, model.memberships);

            Matrix next(c, 2);
            for (Eigen::Index j = 0; j < c; ++j) {
                double denom = 0.0;
                Eigen::RowVector2d numer = Eigen::RowVector2d::Zero();
                for (Eigen::Index i = 0; i < n; ++i) {
                    double w = std::pow(model.memberships(i, j), options.fuzzifier);
                    denom += w;
                    numer += w * points.row(i);
                }
                if (denom > 0.0) {
                    next.row(j) = numer / denom;
                } else {
                    next.row(j) = model.centroids.row(j);
                }
            }

            double movement = (next - model.centroids).rowwise().norm().maxCoeff();
            model.centroids = next;
            model.iterations = iter + 1;

            if (c > 1 && centroids_collapsed(model.centroids)) {
                collapsed = true;
                break;
            }

            // J with the just-updated memberships and centroids
            memberships_into(points, model.centroids, options.fuzzifier, model.memberships);
            model.objective_trace.push_back(
                objective(points, model.centroids, model.memberships, options.fuzzifier));

            if (movement < options.tol) break;
        }

        if (!collapsed) {
            return model;
        }
    }
    throw Error(Errc::EmptyClusterCollapse,
                "centroids collapsed on every seed after " + std::to_string(options.max_restarts) +
                    " restarts");
}

Vector fcm_membership(const Matrix& centroids, double fuzzifier, const Eigen::RowVector2d& point) {
    Matrix single(1, 2);
    single.row(0) = point;
    Matrix memberships(1, centroids.rows());
    memberships_into(single, centroids, fuzzifier, memberships);
    return memberships.row(0).transpose();
}

std::vector<std::string> assign_cluster_labels(const FuzzyClusterModel& model,
                                               const std::vector<std::string>& real_labels) {
    const Eigen::Index n = model.memberships.rows();
    const Eigen::Index c = model.cluster_count();
    if (static_cast<Eigen::Index>(real_labels.size()) != n) {
        throw Error(Errc::InvalidConfig, "label count differs from fit point count");
    }

    std::set<std::string> distinct(real_labels.begin(), real_labels.end());
    if (static_cast<Eigen::Index>(distinct.size()) < c) {
        throw Error(Errc::InsufficientClasses, std::to_string(distinct.size()) +
                                                   " distinct classes for " + std::to_string(c) +
                                                   " clusters");
    }
    std::vector<std::string> classes(distinct.begin(), distinct.end());

    // counts[cluster][class] from the hard assignment
    std::vector<std::map<std::string, long>> counts(c);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < c; ++j) {
            if (model.memberships(i, j) > model.memberships(i, best)) best = j;
        }
        ++counts[best][real_labels[i]];
    }

    std::vector<std::string> labels(c);
    std::vector<bool> cluster_done(c, false);
    std::set<std::string> used;
    for (Eigen::Index round = 0; round < c; ++round) {
        long best_count = -1;
        Eigen::Index best_cluster = -1;
        std::string best_class;
        // scan order (cluster ascending, class ascending) realizes the
        // tie-break: higher count, then lower cluster index, then smaller
        // class label
        for (Eigen::Index j = 0; j < c; ++j) {
            if (cluster_done[j]) continue;
            for (const auto& cls : classes) {
                if (used.count(cls)) continue;
                auto it = counts[j].find(cls);
                long count = it == counts[j].end() ? 0 : it->second;
                if (count > best_count) {
                    best_count = count;
                    best_cluster = j;
                    best_class = cls;
                }
            }
        }
        labels[best_cluster] = best_class;
        cluster_done[best_cluster] = true;
        used.insert(best_class);
    }
    return labels;
}

ClassificationResult classify_synthetic(const FuzzyClusterModel& model, const Matrix& synth_coords,
                                        const std::vector<std::string>& synth_ids,
                                        const std::vector<std::string>& synth_labels) {
    if (!model.labels_assigned()) {
        throw Error(Errc::InvalidConfig, "cluster labels must be assigned before classification");
    }
    const Eigen::Index ns = synth_coords.rows();
    if (static_cast<Eigen::Index>(synth_ids.size()) != ns ||
        static_cast<Eigen::Index>(synth_labels.size()) != ns) {
        throw Error(Errc::InvalidConfig, "synthetic ids/labels/coords counts differ");
    }

    ClassificationResult result;
    result.points.reserve(ns);
    long correct = 0;
    for (Eigen::Index i = 0; i < ns; ++i) {
        PointClassification point;
        point.id = synth_ids[i];
        point.true_label = synth_labels[i];
        point.memberships = fcm_membership(model.centroids, model.fuzzifier, synth_coords.row(i));
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < model.cluster_count(); ++j) {
            if (point.memberships(j) > point.memberships(best)) best = j;
        }
        point.predicted_label = model.labels[best];
        point.correct = point.predicted_label == point.true_label;
        if (point.correct) ++correct;
        result.points.push_back(std::move(point));
    }
    result.accuracy = ns > 0 ? static_cast<double>(correct) / static_cast<double>(ns) : 0.0;
    return result;
}

double clustering_accuracy_real(const FuzzyClusterModel& model,
                                const std::vector<std::string>& real_labels) {
    if (!model.labels_assigned()) {
        throw Error(Errc::InvalidConfig, "cluster labels must be assigned first");
    }
    const Eigen::Index n = model.memberships.rows();
    if (static_cast<Eigen::Index>(real_labels.size()) != n) {
        throw Error(Errc::InvalidConfig, "label count differs from fit point count");
    }
    long correct = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < model.cluster_count(); ++j) {
            if (model.memberships(i, j) > model.memberships(i, best)) best = j;
        }
        if (model.labels[best] == real_labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(n);
}

}  // namespace semacc
