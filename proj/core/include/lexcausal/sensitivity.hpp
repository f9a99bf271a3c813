#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lexcausal/ci_tests.hpp"
#include "lexcausal/data_model.hpp"
#include "lexcausal/graph.hpp"
#include "lexcausal/pc_stable.hpp"

namespace lexcausal {

/// Builds the analysis dataset for one polysemy categorization.
using TableBuilder = std::function<Dataset(const CategorizationScheme&)>;

struct SensitivityOptions {
  int ci_bins = kDefaultCIBins;
  std::optional<std::size_t> max_conditioning = std::nullopt;
  /// Edges at or above this fraction enter the final graph (drawn dashed).
  double stable_threshold = 2.0 / 3.0;
  /// Edges at or above this fraction are drawn solid.
  double solid_threshold = 1.0;
  /// (from, to) pairs oriented by hand on the aggregated graph.
  std::vector<std::pair<std::string, std::string>> manual_orientations;
};

struct GridCell {
  double alpha = 0.0;
  std::size_t scheme_index = 0;
  bool ok = false;
  std::string error;
  PCResult result;
};

/// Appearance statistics of one unordered node pair; a < b by name.
struct EdgeStat {
  std::string a;
  std::string b;
  std::size_t present = 0;
  std::size_t forward = 0;   // a -> b
  std::size_t backward = 0;  // b -> a
  std::size_t undirected = 0;
  double fraction = 0.0;  // present over successful cells
};

struct SensitivityReport {
  std::vector<double> alphas;
  std::vector<CategorizationScheme> schemes;
  double stable_threshold = 2.0 / 3.0;
  double solid_threshold = 1.0;
  std::vector<GridCell> cells;  // alpha-major
  std::size_t successful = 0;
  std::vector<EdgeStat> edges;  // pairs seen at least once, sorted by name
  CausalGraph final_graph;
  std::vector<std::string> warnings;

  /// Fraction for a pair; 0 when it never appeared.
  double fraction(const std::string& a, const std::string& b) const;
  EdgeFractions fractions() const;
  /// Aligned text table: "a -- b   21/27 (77.8%)".
  std::string format_table() const;
  /// a,b,present,cells,fraction,forward,backward,undirected
  std::string to_csv() const;
};

/// One PC-stable run per (alpha, scheme) cell with the mixed CI protocol.
/// A failing cell is recorded and excluded from the denominators. The
/// final graph keeps edges at or above the stable threshold, oriented by
/// majority over the cells where the edge appeared, then Meek-completed
/// after the manual orientations.
SensitivityReport sensitivity_grid(const TableBuilder& build, const std::vector<double>& alphas,
                                   const std::vector<CategorizationScheme>& schemes,
                                   const SensitivityOptions& options = {});

}  // namespace lexcausal
