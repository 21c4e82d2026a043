#pragma once

#include <string>
#include <vector>

#include "semacc/types.hpp"

namespace semacc {

/// A labeled set of feature vectors, one row per image.
///
/// Invariants (enforced by validate(), called by every loader):
///   - ids are unique and non-empty, |ids| == |labels| == rows of features
///   - labels are non-empty strings
///   - every feature value is finite
///   - n >= 1, D >= 1
struct FeatureDataset {
    std::vector<std::string> ids;
    std::vector<std::string> labels;
    Matrix features;  // n x D
    Source source = Source::Real;

    Eigen::Index size() const { return features.rows(); }
    Eigen::Index dim() const { return features.cols(); }

    /// Distinct labels in lexicographic order.
    std::vector<std::string> label_set() const;

    void validate() const;
};

/// Real and synthetic sets paired for a joint embedding. Row order downstream
/// is always all real rows first, then all synthetic rows.
struct CombinedDataset {
    FeatureDataset real;
    FeatureDataset synthetic;

    Eigen::Index total() const { return real.size() + synthetic.size(); }

    /// Feature matrices stacked real-first.
    Matrix stacked_features() const;
};

/// 2-D coordinates with identity, label and provenance carried through from
/// the combined input, in input order.
struct Embedding2D {
    std::vector<std::string> ids;
    std::vector<std::string> labels;
    std::vector<Source> sources;
    Matrix coords;  // n x 2

    Eigen::Index size() const { return coords.rows(); }
    Eigen::Index real_count() const;

    void validate() const;
};

/// Loads `id,label,f0,...,f{D-1}` CSV. UTF-8, '.' decimal separator, LF or
/// CRLF line endings. Row numbers in errors are 1-based data rows (the header
/// is row 0).
FeatureDataset load_feature_csv(const std::string& path, Source source);

/// Writes the same format with shortest round-trip float formatting, so a
/// load after save reproduces features bit-exactly.
void save_feature_csv(const FeatureDataset& dataset, const std::string& path);

/// Checks dimensions agree and every synthetic label has real exemplars.
CombinedDataset combine(FeatureDataset real, FeatureDataset synthetic);

}  // namespace semacc
