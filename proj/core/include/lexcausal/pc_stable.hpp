#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lexcausal/ci_tests.hpp"
#include "lexcausal/graph.hpp"

namespace lexcausal {

/// Separating sets keyed by the unordered pair of node names.
class SepsetMap {
 public:
  void set(const std::string& a, const std::string& b, std::vector<std::string> sepset);
  const std::vector<std::string>* find(const std::string& a, const std::string& b) const;
  bool contains(const std::string& a, const std::string& b, const std::string& c) const;
  std::size_t size() const noexcept { return sets_.size(); }
  const std::map<std::pair<std::string, std::string>, std::vector<std::string>>& entries() const noexcept {
    return sets_;
  }

  friend bool operator==(const SepsetMap&, const SepsetMap&) = default;

 private:
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> sets_;
};

struct PCOptions {
  double alpha = 0.05;
  /// Largest conditioning set tried; unbounded (up to |V| - 2) by default.
  std::optional<std::size_t> max_conditioning = std::nullopt;
};

struct Skeleton {
  CausalGraph graph;  // undirected
  SepsetMap sepsets;
  std::size_t tests_run = 0;
};

/// PC-stable adjacency search. Adjacency sets are frozen at the start of
/// every level; pairs, conditioning candidates and subsets are visited in
/// node-name order, so the skeleton and the separating sets do not depend
/// on the column order of the input.
Skeleton pc_stable_skeleton(const CITest& test, const PCOptions& options);

/// Orients a -> c <- b for every unshielded triple with c outside
/// sepset(a, b). An edge demanded in both directions stays undirected and
/// a warning is appended.
CausalGraph orient_v_structures(const Skeleton& skeleton, std::vector<std::string>* warnings = nullptr);

/// Meek rules 1-4 to a fixpoint. Orientations that would close a directed
/// cycle are skipped.
CausalGraph apply_meek_rules(CausalGraph graph);

/// Directs the undirected edge from - to. EdgeNotFound when there is no
/// undirected edge; WouldCreateCycle when to already reaches from.
CausalGraph manual_orient(CausalGraph graph, const std::string& from, const std::string& to);

struct PCResult {
  Skeleton skeleton;
  CausalGraph cpdag;
  std::vector<std::string> warnings;
};

/// Skeleton, v-structures and Meek completion.
PCResult run_pc_stable(const CITest& test, const PCOptions& options);

}  // namespace lexcausal
