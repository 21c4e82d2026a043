#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semacc/dataset.hpp"
#include "semacc/fcm.hpp"
#include "semacc/metrics.hpp"

namespace semacc {

/// Options shared by all pipeline commands. Each command reads the subset it
/// needs; unset optionals fall back to data-derived defaults.
struct PipelineOptions {
    std::filesystem::path real_csv;
    std::filesystem::path synthetic_csv;
    std::filesystem::path out_dir;

    Eigen::Index pca_dims = 50;
    std::string pca_fit = "combined";  // "combined" | "real"
    std::optional<double> perplexity;  // default: synthetic count / class count
    int tsne_iters = 1000;
    bool record_kl_trace = false;

    double fuzzifier = 2.0;
    std::optional<Eigen::Index> clusters;  // default: distinct real classes

    std::uint64_t seed = 42;

    std::vector<std::string> plot_modes = {"correct", "class"};
    int plot_width = 800;
    int plot_height = 600;
    double point_radius = 2.0;

    std::optional<std::filesystem::path> probs_csv;
    int splits = 10;
    bool shuffle_splits = false;

    // Joint embedding is quadratic in point count; refuse rather than subsample.
    Eigen::Index max_points = 10000;
};

struct EvaluationReport {
    nlohmann::json config;  // hyperparameters, seed, input digests
    long n_real = 0;
    long n_synthetic = 0;
    long feature_dim = 0;
    std::vector<std::string> classes;
    double clustering_accuracy_real = 0.0;
    double clustering_accuracy_synthetic = 0.0;
    // true class -> predicted class -> count, synthetic points only
    std::map<std::string, std::map<std::string, long>> confusion;
    // true class -> accuracy over that class's synthetic points
    std::map<std::string, double> per_class_accuracy;
    std::map<std::string, long> per_class_count;
    std::optional<InceptionScoreResult> inception;
    std::optional<double> direct_acc;
    long calibration_failures = 0;
    std::map<std::string, double> timings_s;

    nlohmann::json to_json() const;
};

/// Full run: load -> combine -> PCA -> joint t-SNE -> FCM on real rows ->
/// label assignment -> synthetic classification -> artifacts + report.json.
/// Partially written artifacts are removed if any stage fails; stage errors
/// carry the stage name.
EvaluationReport cmd_evaluate(const PipelineOptions& options);

/// Stage commands against on-disk artifacts in options.out_dir.
void cmd_embed(const PipelineOptions& options);    // writes embedding.csv (+ kl_trace.csv)
void cmd_cluster(const PipelineOptions& options);  // embedding.csv -> classification.csv, clusters.json
void cmd_plot(const PipelineOptions& options);     // embedding/classification -> plot_<mode>.svg
void cmd_score(const PipelineOptions& options);    // probability CSV -> score.json

/// Artifact readers, shared by the stage commands and external consumers.
struct EmbeddingArtifact {
    Embedding2D embedding;
    std::map<std::string, std::string> metadata;
};
EmbeddingArtifact load_embedding_artifact(const std::filesystem::path& path);

struct ClassificationArtifact {
    ClassificationResult result;
    std::map<std::string, std::string> metadata;
};
ClassificationArtifact load_classification_artifact(const std::filesystem::path& path);

}  // namespace semacc
