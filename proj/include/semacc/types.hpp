#pragma once

#include <Eigen/Dense>
#include <string>

namespace semacc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Provenance of a feature set: measured images vs. generator output.
enum class Source { Real, Synthetic };

inline const char* to_string(Source s) {
    return s == Source::Real ? "real" : "synthetic";
}

}  // namespace semacc
