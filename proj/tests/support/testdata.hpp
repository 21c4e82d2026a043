#pragma once

// Deterministic synthetic datasets and scratch-directory helpers shared by
// the test binaries.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "semacc/dataset.hpp"
#include "semacc/metrics.hpp"
#include "semacc/rng.hpp"

namespace testdata {

struct BlobSpec {
    int classes = 5;
    int per_class = 120;
    int dim = 50;
    double separation = 10.0;  // pairwise mean distance in units of per-axis sigma
};

// Class k's mean is (separation / sqrt(2)) * e_k, which puts every pair of
// class means exactly `separation` apart with unit per-axis noise.
inline semacc::FeatureDataset make_blobs(const BlobSpec& spec, semacc::Source source,
                                         const std::string& id_prefix, std::uint64_t seed) {
    semacc::Rng rng(seed);
    semacc::FeatureDataset out;
    out.source = source;
    const int n = spec.classes * spec.per_class;
    out.features = semacc::Matrix(n, spec.dim);
    const double shift = spec.separation / std::sqrt(2.0);
    int row = 0;
    for (int k = 0; k < spec.classes; ++k) {
        for (int i = 0; i < spec.per_class; ++i, ++row) {
            out.ids.push_back(id_prefix + std::to_string(row));
            out.labels.push_back("c" + std::to_string(k));
            for (int d = 0; d < spec.dim; ++d) {
                out.features(row, d) = (d == k ? shift : 0.0) + rng.gaussian();
            }
        }
    }
    return out;
}

inline semacc::Matrix blob_class_means(const BlobSpec& spec) {
    semacc::Matrix means = semacc::Matrix::Zero(spec.classes, spec.dim);
    const double shift = spec.separation / std::sqrt(2.0);
    for (int k = 0; k < spec.classes; ++k) means(k, k) = shift;
    return means;
}

// Oracle classifier for blob data: softmax of -||x - mu_k||^2 / 2 over the
// true generating means.
inline semacc::ProbabilityMatrix nearest_mean_probs(const semacc::FeatureDataset& data,
                                                    const std::vector<std::string>& class_names,
                                                    const semacc::Matrix& class_means) {
    semacc::ProbabilityMatrix probs;
    probs.ids = data.ids;
    probs.labels = data.labels;
    probs.class_names = class_names;
    const Eigen::Index n = data.size();
    const Eigen::Index c = class_means.rows();
    probs.rows = semacc::Matrix(n, c);
    for (Eigen::Index i = 0; i < n; ++i) {
        semacc::Vector logit(c);
        for (Eigen::Index k = 0; k < c; ++k) {
            logit(k) = -0.5 * (data.features.row(i) - class_means.row(k)).squaredNorm();
        }
        double shift = logit.maxCoeff();
        double sum = 0.0;
        for (Eigen::Index k = 0; k < c; ++k) {
            probs.rows(i, k) = std::exp(logit(k) - shift);
            sum += probs.rows(i, k);
        }
        probs.rows.row(i) /= sum;
    }
    return probs;
}

// Per-binary scratch directory under the working directory; wiped on entry so
// reruns start clean.
inline std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::current_path() / "test_tmp" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace testdata
