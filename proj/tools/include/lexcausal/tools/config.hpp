#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lexcausal/clustering.hpp"
#include "lexcausal/data_model.hpp"
#include "lexcausal/distance.hpp"
#include "lexcausal/semantic_change.hpp"

namespace lexcausal::tools {

inline constexpr const char* kOutputDirEnv = "LEXCAUSAL_OUTPUT_DIR";

struct PipelineConfig {
  std::filesystem::path records;
  std::filesystem::path embeddings;
  std::filesystem::path output_dir = "lexcausal_out";
  /// Semantic change scores for discover/ace/groupstats/evaluate; defaults
  /// to the semchange output in output_dir.
  std::filesystem::path scores;
  std::filesystem::path gold;
  /// Graph for ace; defaults to the discover output in output_dir.
  std::filesystem::path graph;

  Eigen::Index h = kDefaultPcaDim;
  DistanceMetric metric = DistanceMetric::combined_d2cos;
  std::int64_t min_tweets = kDefaultMinTweets;
  ScoreMethod score_method = ScoreMethod::apd;
  ClusterMethod cluster_method = ClusterMethod::kmeans;
  KSelector k_selector = KSelector::silhouette;
  int k_max = 10;
  int cluster_restarts = 10;
  double silhouette_threshold = 0.1;

  double pos_threshold = kDefaultPosThreshold;
  std::vector<double> alphas = {0.01, 0.03, 0.05};
  std::vector<std::string> schemes;  // compact form; empty means the nine defaults
  int ci_bins = 3;
  std::optional<std::size_t> max_conditioning;
  double stable_threshold = 2.0 / 3.0;
  double solid_threshold = 1.0;
  std::vector<std::pair<std::string, std::string>> manual_orientations = {{"type", "polysemy"}};
  bool drop_incomplete = true;

  std::optional<double> rescale_factor;
  std::size_t histogram_bins = 20;
  std::size_t n_perm = 10000;
  std::uint64_t seed = 0;

  std::vector<CategorizationScheme> parsed_schemes() const;
  SemanticChangeConfig semantic_change_config() const;
  std::filesystem::path scores_path() const;
  std::filesystem::path graph_path() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Unknown keys are rejected with ConfigError; missing keys keep defaults.
PipelineConfig config_from_json(const std::string& text);
std::string config_to_json(const PipelineConfig& config);
PipelineConfig load_config(const std::filesystem::path& path);

/// Replaces output_dir with the environment override when set.
void apply_environment(PipelineConfig& config);

}  // namespace lexcausal::tools
