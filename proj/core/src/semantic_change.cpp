#include "lexcausal/semantic_change.hpp"

#include <algorithm>
#include <array>

#include "lexcausal/error.hpp"
#include "lexcausal/pca.hpp"
#include "lexcausal/stats.hpp"

namespace lexcausal {

std::string_view to_string(ScoreMethod m) noexcept {
  switch (m) {
    case ScoreMethod::apd: return "apd";
    case ScoreMethod::ed: return "ed";
    case ScoreMethod::jsd: return "jsd";
  }
  return "apd";
}

ScoreMethod parse_score_method(std::string_view text) {
  if (text == "apd") return ScoreMethod::apd;
  if (text == "ed") return ScoreMethod::ed;
  if (text == "jsd") return ScoreMethod::jsd;
  throw Error(Errc::ConfigError, "unknown score method '" + std::string(text) + "'");
}

void check_occurrences(const EmbeddingSet& p1, const EmbeddingSet& p2, std::int64_t min_tweets) {
  for (const auto* s : {&p1, &p2}) {
    if (s->count() < min_tweets)
      throw Error(Errc::TooFewOccurrences, s->word + " has " + std::to_string(s->count()) + " occurrences in period " +
                                               s->period + " (minimum " + std::to_string(min_tweets) + ")");
  }
}

double semantic_change_raw(const EmbeddingSet& p1, const EmbeddingSet& p2, const SemanticChangeConfig& config) {
  check_occurrences(p1, p2, config.min_tweets);
  validate(p1);
  validate(p2);
  if (p1.dim() != p2.dim()) throw Error(Errc::DimMismatch, p1.word + ": periods differ in embedding dim");

  RowMatrix a = p1.matrix;
  RowMatrix b = p2.matrix;
  if (config.h > 0) {
    const std::array<EmbeddingSet, 2> pooled = {p1, p2};
    const auto model = fit_pca(pooled, config.h);
    a = project(model, p1.matrix);
    b = project(model, p2.matrix);
  }
  switch (config.method) {
    case ScoreMethod::apd:
      return apd(a, b, config.metric);
    case ScoreMethod::ed: {
      const auto c = cluster_senses(a, b, config.clustering);
      return ed(c.period1, c.period2);
    }
    case ScoreMethod::jsd: {
      const auto c = cluster_senses(a, b, config.clustering);
      return jsd(c.period1, c.period2);
    }
  }
  return 0.0;
}

std::vector<SemanticChangeScore> normalize_scores(const std::vector<std::pair<std::string, double>>& raw) {
  if (raw.empty()) throw Error(Errc::ConstantScores, "no scores to normalize");
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end(),
                                            [](const auto& a, const auto& b) { return a.second < b.second; });
  const double min = lo->second;
  const double range = hi->second - min;
  if (!(range > 0.0)) throw Error(Errc::ConstantScores, "all raw scores are equal");
  std::vector<SemanticChangeScore> out;
  out.reserve(raw.size());
  for (const auto& [word, value] : raw) out.push_back({word, value, (value - min) / range});
  return out;
}

RankingEvaluation evaluate_ranking(const std::map<std::string, double>& scores,
                                   const std::map<std::string, double>& gold) {
  std::vector<double> x, y;
  for (const auto& [word, s] : scores) {
    if (auto it = gold.find(word); it != gold.end()) {
      x.push_back(s);
      y.push_back(it->second);
    }
  }
  if (x.size() < 3) throw Error(Errc::TooFewWords, "ranking evaluation needs at least 3 shared words, got " +
                                                      std::to_string(x.size()));
  const auto r = spearman(x, y);
  return RankingEvaluation{r.r, r.p_value, x.size()};
}

}  // namespace lexcausal
