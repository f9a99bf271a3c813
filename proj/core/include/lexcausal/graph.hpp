#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexcausal/ci_tests.hpp"

namespace lexcausal {

enum class EdgeProvenance { v_structure, meek, manual };

std::string_view to_string(EdgeProvenance p) noexcept;
EdgeProvenance parse_edge_provenance(std::string_view text);

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  bool directed = false;  // a -> b when directed
  std::optional<EdgeProvenance> provenance;
};

/// Partially directed graph over named nodes. An undirected edge a - b and
/// a directed edge a -> b are the only edge kinds; there are no self-loops.
class CausalGraph {
 public:
  CausalGraph() = default;
  explicit CausalGraph(std::vector<std::string> names);
  static CausalGraph complete(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::size_t index_of(std::string_view name) const;

  bool adjacent(std::size_t a, std::size_t b) const noexcept { return arc(a, b) || arc(b, a); }
  bool is_directed(std::size_t from, std::size_t to) const noexcept { return arc(from, to) && !arc(to, from); }
  bool is_undirected(std::size_t a, std::size_t b) const noexcept { return arc(a, b) && arc(b, a); }
  std::optional<EdgeProvenance> provenance(std::size_t from, std::size_t to) const;

  void add_undirected(std::size_t a, std::size_t b);
  void add_directed(std::size_t from, std::size_t to, std::optional<EdgeProvenance> provenance = std::nullopt);
  void remove_edge(std::size_t a, std::size_t b);
  /// Turns an existing edge into from -> to.
  void orient(std::size_t from, std::size_t to, EdgeProvenance provenance);
  /// Turns an existing directed edge back into an undirected one.
  void unorient(std::size_t a, std::size_t b);

  std::vector<std::size_t> adjacents(std::size_t a) const;
  std::vector<std::size_t> parents(std::size_t a) const;
  std::vector<std::size_t> children(std::size_t a) const;
  std::vector<std::size_t> undirected_neighbors(std::size_t a) const;

  /// Path of directed edges only.
  bool has_directed_path(std::size_t from, std::size_t to) const;
  bool directed_part_acyclic() const;
  std::size_t edge_count() const;

  /// Canonical listing: undirected edges as (a, b) with name(a) < name(b).
  std::vector<Edge> edges() const;

  friend bool operator==(const CausalGraph& x, const CausalGraph& y) { return x.names_ == y.names_ && x.arcs_ == y.arcs_; }

 private:
  bool arc(std::size_t a, std::size_t b) const noexcept { return arcs_[a * names_.size() + b] != 0; }
  void set_arc(std::size_t a, std::size_t b, bool v) { arcs_[a * names_.size() + b] = v ? 1 : 0; }
  void check(std::size_t a, std::size_t b) const;

  std::vector<std::string> names_;
  std::vector<std::uint8_t> arcs_;  // arcs_[a*n+b]: edge a-b may point a -> b
  std::map<std::pair<std::size_t, std::size_t>, EdgeProvenance> provenance_;
};

/// d-separation of x and y given z in a fully directed acyclic graph, via the
/// moral graph of the ancestors of {x, y} and z.
bool d_separated(const CausalGraph& dag, std::size_t x, std::size_t y, std::span<const std::size_t> z);

/// CI answers read off a DAG: p = 1 when d-separated, 0 otherwise.
class DSeparationOracle final : public CITest {
 public:
  explicit DSeparationOracle(CausalGraph dag);
  const std::vector<std::string>& variable_names() const override { return dag_.names(); }
  CITestResult test(std::size_t x, std::size_t y, std::span<const std::size_t> z) const override;

 private:
  CausalGraph dag_;
};

/// Edge annotation used when exporting aggregated graphs.
using EdgeFractions = std::map<std::pair<std::string, std::string>, double>;

/// {"nodes": [...], "edges": [{"a","b","directed","provenance","fraction"}]}
std::string graph_to_json(const CausalGraph& graph, const EdgeFractions* fractions = nullptr);
CausalGraph graph_from_json(std::string_view text);
/// Graphviz text; undirected edges get dir=none, fractions below 1 are dashed.
std::string graph_to_dot(const CausalGraph& graph, const EdgeFractions* fractions = nullptr);

}  // namespace lexcausal
