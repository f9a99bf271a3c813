#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lexcausal/clustering.hpp"
#include "lexcausal/distance.hpp"
#include "lexcausal/embedding_store.hpp"

namespace lexcausal {

inline constexpr Eigen::Index kDefaultPcaDim = 100;
inline constexpr std::int64_t kDefaultMinTweets = 150;

enum class ScoreMethod { apd, ed, jsd };

std::string_view to_string(ScoreMethod m) noexcept;
ScoreMethod parse_score_method(std::string_view text);

struct SemanticChangeConfig {
  Eigen::Index h = kDefaultPcaDim;  // 0 disables the PCA step
  DistanceMetric metric = DistanceMetric::combined_d2cos;
  std::int64_t min_tweets = kDefaultMinTweets;
  ScoreMethod method = ScoreMethod::apd;
  ClusterOptions clustering;  // ed / jsd only
};

/// Throws TooFewOccurrences if either period has fewer than min_tweets rows.
void check_occurrences(const EmbeddingSet& p1, const EmbeddingSet& p2, std::int64_t min_tweets);

/// Pools both periods, fits PCA (unless h == 0), projects both and returns
/// the APD or the ED/JSD of the shared sense clustering.
double semantic_change_raw(const EmbeddingSet& p1, const EmbeddingSet& p2, const SemanticChangeConfig& config);

struct SemanticChangeScore {
  std::string word;
  double raw = 0.0;
  double normalized = 0.0;
};

/// Min-max normalization over the sample; ConstantScores when fewer than two
/// distinct raw values.
std::vector<SemanticChangeScore> normalize_scores(const std::vector<std::pair<std::string, double>>& raw);

struct RankingEvaluation {
  double rho = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// Spearman correlation over words present in both maps.
RankingEvaluation evaluate_ranking(const std::map<std::string, double>& scores,
                                   const std::map<std::string, double>& gold);

}  // namespace lexcausal
