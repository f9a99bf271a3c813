#include "lexcausal/error.hpp"

namespace lexcausal {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::IoError: return "IoError";
    case Errc::MissingColumn: return "MissingColumn";
    case Errc::NonNumericCount: return "NonNumericCount";
    case Errc::UnknownWordType: return "UnknownWordType";
    case Errc::InvalidFraction: return "InvalidFraction";
    case Errc::InvalidScheme: return "InvalidScheme";
    case Errc::MissingDerivedValue: return "MissingDerivedValue";
    case Errc::ConfigError: return "ConfigError";
    case Errc::BadMagic: return "BadMagic";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::TruncatedPayload: return "TruncatedPayload";
    case Errc::InsufficientRows: return "InsufficientRows";
    case Errc::ZeroVectorForCosine: return "ZeroVectorForCosine";
    case Errc::EmptySet: return "EmptySet";
    case Errc::TooFewOccurrences: return "TooFewOccurrences";
    case Errc::ClusteringMismatch: return "ClusteringMismatch";
    case Errc::ConstantScores: return "ConstantScores";
    case Errc::TooFewWords: return "TooFewWords";
    case Errc::EmptySamples: return "EmptySamples";
    case Errc::ZeroGrandMean: return "ZeroGrandMean";
    case Errc::NonPositiveFrequency: return "NonPositiveFrequency";
    case Errc::EmptyGroup: return "EmptyGroup";
    case Errc::DegenerateVariance: return "DegenerateVariance";
    case Errc::SingularCovariance: return "SingularCovariance";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::DegenerateMargins: return "DegenerateMargins";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::CITestFailure: return "CITestFailure";
    case Errc::EdgeNotFound: return "EdgeNotFound";
    case Errc::WouldCreateCycle: return "WouldCreateCycle";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::UndirectedEdgeAtTreatment: return "UndirectedEdgeAtTreatment";
    case Errc::MissingTreatmentLevel: return "MissingTreatmentLevel";
    case Errc::AllStrataDegenerate: return "AllStrataDegenerate";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_input_error(Errc code) noexcept {
  switch (code) {
    case Errc::IoError:
    case Errc::MissingColumn:
    case Errc::NonNumericCount:
    case Errc::UnknownWordType:
    case Errc::InvalidFraction:
    case Errc::InvalidScheme:
    case Errc::MissingDerivedValue:
    case Errc::ConfigError:
    case Errc::BadMagic:
    case Errc::UnsupportedVersion:
    case Errc::DimMismatch:
    case Errc::TruncatedPayload:
    case Errc::TooFewOccurrences:
    case Errc::TooFewWords:
    case Errc::EmptySamples:
    case Errc::EmptyGroup:
    case Errc::UnknownNode:
    case Errc::EdgeNotFound:
    case Errc::InvalidArgument:
    case Errc::UndirectedEdgeAtTreatment:
    case Errc::MissingTreatmentLevel:
      return true;
    default:
      return false;
  }
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

}  // namespace lexcausal
