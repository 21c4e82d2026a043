#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "semacc/types.hpp"

namespace semacc {

// Per-item class-probability distributions, e.g. softmax outputs of a
// pretrained classifier.
struct ProbabilityMatrix {
    std::vector<std::string> ids;
    std::vector<std::string> labels;      // true class per row
    std::vector<std::string> class_names; // column names, size C
    Matrix rows;                          // n x C, each row a distribution

    // Throws InvalidDistribution unless every entry is in [0,1] and every row
    // sums to 1 within 1e-6; throws on id/label/shape inconsistencies.
    void validate() const;
};

struct InceptionScoreResult {
    double mean = 0.0;
    double std_dev = 0.0;
};

// exp(mean KL(row || split marginal)) per contiguous split, aggregated as
// mean and population standard deviation over splits. When shuffle_seed is
// set, rows are permuted with a seeded Fisher-Yates pass before splitting.
InceptionScoreResult inception_score(const ProbabilityMatrix& probs, int splits,
                                     std::optional<std::uint64_t> shuffle_seed = std::nullopt);

// Fraction of rows whose argmax class (ties -> lowest class index) equals the
// row's true label.
double direct_accuracy(const ProbabilityMatrix& probs, const std::vector<std::string>& true_labels);

// CSV with optional leading `# classes <comma-joined names>` manifest line and
// header `id,label,p0,...,p{C-1}`. Without a manifest, class names default to
// the p0..p{C-1} column names.
ProbabilityMatrix load_probability_csv(const std::filesystem::path& path);
void save_probability_csv(const ProbabilityMatrix& probs, const std::filesystem::path& path);

}  // namespace semacc
