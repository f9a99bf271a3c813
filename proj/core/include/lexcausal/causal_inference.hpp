#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lexcausal/ci_tests.hpp"
#include "lexcausal/data_model.hpp"
#include "lexcausal/graph.hpp"
#include "lexcausal/stats.hpp"

namespace lexcausal {

/// Parents of the treatment. UndirectedEdgeAtTreatment when any edge at the
/// treatment is still undirected.
std::vector<std::string> identify_adjustment_set(const CausalGraph& graph, const std::string& treatment,
                                                 const std::string& outcome);

struct ACEOptions {
  /// Quantile bins for continuous adjustment variables.
  int bins = kDefaultCIBins;
  std::size_t n_perm = kDefaultPermutations;
  std::uint64_t seed = 0;
};

struct DroppedStratum {
  std::string label;  // "w=0,z=2"
  std::size_t n_level = 0;
  std::size_t n_reference = 0;
};

struct ACEResult {
  std::string treatment;
  std::string outcome;
  double level = 1.0;      // x
  double reference = 0.0;  // x'
  std::vector<std::string> adjustment_set;
  double estimate = 0.0;  // E[Y | do(T = x)] - E[Y | do(T = x')]
  double p_value = 1.0;
  std::string p_value_method;  // "welch" or "stratified_permutation"
  std::size_t n_level = 0;
  std::size_t n_reference = 0;
  std::size_t strata_used = 0;
  std::vector<DroppedStratum> dropped_strata;
};

/// Back-door adjusted contrast of the outcome between two treatment levels.
/// With no adjustment variables this is the difference of group means with
/// a Welch p-value. Otherwise strata of the adjustment variables lacking
/// either level are dropped and the per-stratum differences are weighted by
/// stratum size; the p-value comes from permuting treatment within strata.
ACEResult estimate_ace(const Dataset& data, const std::string& treatment, const std::string& outcome,
                       const std::vector<std::string>& adjustment_set, double level, double reference,
                       const ACEOptions& options = {});

std::string ace_to_json(const ACEResult& result);
std::string ace_to_json(const std::vector<ACEResult>& results);

}  // namespace lexcausal
