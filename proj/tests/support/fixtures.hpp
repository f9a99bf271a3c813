#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lexcausal/data_model.hpp"
#include "lexcausal/embedding_store.hpp"
#include "lexcausal/graph.hpp"
#include "lexcausal/sensitivity.hpp"

namespace lexcausal::testing {

/// n_per rows around each center with isotropic noise sigma.
RowMatrix gaussian_blobs(const RowMatrix& centers, Eigen::Index n_per, double sigma, std::uint64_t seed);

RowMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// Node names v0, v1, ...
std::vector<std::string> node_names(std::size_t n);

/// Every DAG on n labelled nodes.
std::vector<CausalGraph> all_dags(std::size_t n);

/// CPDAGs by brute force: DAGs are grouped by skeleton and v-structures and
/// an edge is directed when every member of the class agrees on it.
class MarkovEquivalenceOracle {
 public:
  explicit MarkovEquivalenceOracle(const std::vector<CausalGraph>& dags);
  CausalGraph cpdag(const CausalGraph& dag) const;
  std::size_t classes() const noexcept { return classes_.size(); }

 private:
  struct Class {
    std::vector<std::size_t> forward;  // count of members with i -> j, n*n
    std::size_t members = 0;
  };
  static std::string key(const CausalGraph& dag);
  std::size_t n_ = 0;
  std::map<std::string, Class> classes_;
};

/// Forward sample of a causal model over words:
/// type -> semantic_change, type -> freq_shift, type -> polysemy,
/// polysemy -> log_frequency, optional aux -> log_frequency, POS isolated.
struct WordModelOptions {
  std::size_t n = 10000;
  std::uint64_t seed = 0;
  bool collider = true;
  double effect_semantic = 0.084;
  double effect_shift = 1.017;
};

struct WordModelData {
  std::vector<WordRecord> records;
  std::map<std::string, DerivedValues> derived;
  std::vector<double> aux;  // in record order; empty without the collider
};

WordModelData generate_word_model(const WordModelOptions& options);

/// Table builder for the sensitivity grid; appends an "aux" column when present.
TableBuilder word_model_builder(const WordModelData& data);

}  // namespace lexcausal::testing
