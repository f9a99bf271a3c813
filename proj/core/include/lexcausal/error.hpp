#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lexcausal {

enum class Errc {
  // ingestion / configuration
  IoError,
  MissingColumn,
  NonNumericCount,
  UnknownWordType,
  InvalidFraction,
  InvalidScheme,
  MissingDerivedValue,
  ConfigError,
  // embedding store
  BadMagic,
  UnsupportedVersion,
  DimMismatch,
  TruncatedPayload,
  InsufficientRows,
  // semantic change
  ZeroVectorForCosine,
  EmptySet,
  TooFewOccurrences,
  ClusteringMismatch,
  ConstantScores,
  TooFewWords,
  // frequency
  EmptySamples,
  ZeroGrandMean,
  NonPositiveFrequency,
  // stats
  EmptyGroup,
  DegenerateVariance,
  SingularCovariance,
  TooFewSamples,
  DegenerateMargins,
  ZeroVariance,
  // graphs
  CITestFailure,
  EdgeNotFound,
  WouldCreateCycle,
  UnknownNode,
  // causal inference
  UndirectedEdgeAtTreatment,
  MissingTreatmentLevel,
  AllStrataDegenerate,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

/// True for error codes caused by bad user input (files, config, schema)
/// as opposed to numerical or internal failures.
bool is_input_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lexcausal
