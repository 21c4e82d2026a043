#include "semacc/error.hpp"

namespace semacc {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::MissingFile: return "MissingFile";
        case Errc::MalformedHeader: return "MalformedHeader";
        case Errc::NonFiniteValue: return "NonFiniteValue";
        case Errc::DuplicateId: return "DuplicateId";
        case Errc::RaggedRow: return "RaggedRow";
        case Errc::InvalidLabel: return "InvalidLabel";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::UnknownSyntheticLabel: return "UnknownSyntheticLabel";
        case Errc::KTooLarge: return "KTooLarge";
        case Errc::AllZeroDistances: return "AllZeroDistances";
        case Errc::NumericalDivergence: return "NumericalDivergence";
        case Errc::InvalidConfig: return "InvalidConfig";
        case Errc::EmptyClusterCollapse: return "EmptyClusterCollapse";
        case Errc::InsufficientClasses: return "InsufficientClasses";
        case Errc::TooFewRows: return "TooFewRows";
        case Errc::InvalidDistribution: return "InvalidDistribution";
        case Errc::UnknownLabel: return "UnknownLabel";
        case Errc::MissingClassification: return "MissingClassification";
        case Errc::EmptyEmbedding: return "EmptyEmbedding";
        case Errc::StaleArtifact: return "StaleArtifact";
        case Errc::MaxPointsExceeded: return "MaxPointsExceeded";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace semacc
