#pragma once

#include <stdexcept>
#include <string>

namespace semacc {

/// Error codes for every failure mode the library reports. Each code maps to
/// exactly one exception site so callers can branch on code() in tests and in
/// the CLI without parsing messages.
enum class Errc {
    MissingFile,
    MalformedHeader,
    NonFiniteValue,
    DuplicateId,
    RaggedRow,
    InvalidLabel,
    DimensionMismatch,
    UnknownSyntheticLabel,
    KTooLarge,
    AllZeroDistances,
    NumericalDivergence,
    InvalidConfig,
    EmptyClusterCollapse,
    InsufficientClasses,
    TooFewRows,
    InvalidDistribution,
    UnknownLabel,
    MissingClassification,
    EmptyEmbedding,
    StaleArtifact,
    MaxPointsExceeded,
    IoError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code),
          detail_(message) {}

    Errc code() const { return code_; }

    /// Message without the errc_name prefix, for wrappers that add context
    /// and rethrow.
    const std::string& detail() const { return detail_; }

private:
    Errc code_;
    std::string detail_;
};

}  // namespace semacc
