#include "lexcausal/causal_inference.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "lexcausal/error.hpp"
#include "lexcausal/random.hpp"
#include "lexcausal/text_io.hpp"

namespace lexcausal {

std::vector<std::string> identify_adjustment_set(const CausalGraph& graph, const std::string& treatment,
                                                 const std::string& outcome) {
  const auto t = graph.index_of(treatment);
  const auto y = graph.index_of(outcome);
  if (t == y) throw Error(Errc::InvalidArgument, "treatment and outcome are the same node");
  if (!graph.directed_part_acyclic()) throw Error(Errc::WouldCreateCycle, "graph has a directed cycle");
  const auto und = graph.undirected_neighbors(t);
  if (!und.empty())
    throw Error(Errc::UndirectedEdgeAtTreatment,
                "edge " + treatment + " - " + graph.name(und.front()) + " must be oriented first");
  std::vector<std::string> out;
  for (auto p : graph.parents(t))
    if (p != y) out.push_back(graph.name(p));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

double mean_of(const std::vector<double>& v, std::size_t begin, std::size_t end) {
  double s = 0.0;
  for (std::size_t i = begin; i < end; ++i) s += v[i];
  return s / static_cast<double>(end - begin);
}

struct Stratum {
  std::string label;
  std::vector<double> level_values;
  std::vector<double> reference_values;
};

}  // namespace

ACEResult estimate_ace(const Dataset& data, const std::string& treatment, const std::string& outcome,
                       const std::vector<std::string>& adjustment_set, double level, double reference,
                       const ACEOptions& options) {
  if (level == reference) throw Error(Errc::InvalidArgument, "contrast levels must differ");
  const auto& t = data.columns.at(data.index_of(treatment));
  const auto& y = data.columns.at(data.index_of(outcome));
  for (const auto& z : adjustment_set)
    if (z == treatment || z == outcome)
      throw Error(Errc::InvalidArgument, "adjustment set may not contain treatment or outcome");

  ACEResult r;
  r.treatment = treatment;
  r.outcome = outcome;
  r.level = level;
  r.reference = reference;
  r.adjustment_set = adjustment_set;
  std::sort(r.adjustment_set.begin(), r.adjustment_set.end());

  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] == level || t[i] == reference) rows.push_back(i);

  std::vector<double> a, b;
  for (auto i : rows) (t[i] == level ? a : b).push_back(y[i]);
  r.n_level = a.size();
  r.n_reference = b.size();
  if (a.empty() || b.empty())
    throw Error(Errc::MissingTreatmentLevel, "treatment '" + treatment + "' lacks level " +
                                                 format_double(a.empty() ? level : reference));

  if (r.adjustment_set.empty()) {
    r.estimate = mean_of(a, 0, a.size()) - mean_of(b, 0, b.size());
    r.p_value = welch_t_test(a, b).p_value;
    r.p_value_method = "welch";
    r.strata_used = 1;
    return r;
  }

  std::vector<DiscreteColumn> codes;
  for (const auto& z : r.adjustment_set) {
    const auto j = data.index_of(z);
    std::vector<double> sub;
    sub.reserve(rows.size());
    for (auto i : rows) sub.push_back(data.columns[j][i]);
    codes.push_back(data.kinds[j] == VariableKind::continuous ? discretize_quantile(sub, options.bins)
                                                               : discretize_categorical(sub));
  }

  std::map<std::vector<int>, Stratum> strata;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::vector<int> key;
    for (const auto& c : codes) key.push_back(c.codes[k]);
    auto& s = strata[key];
    (t[rows[k]] == level ? s.level_values : s.reference_values).push_back(y[rows[k]]);
  }

  std::vector<Stratum> kept;
  std::size_t kept_n = 0;
  for (auto& [key, s] : strata) {
    for (std::size_t v = 0; v < key.size(); ++v)
      s.label += (v ? "," : "") + r.adjustment_set[v] + "=" + std::to_string(key[v]);
    if (s.level_values.empty() || s.reference_values.empty()) {
      r.dropped_strata.push_back({s.label, s.level_values.size(), s.reference_values.size()});
      continue;
    }
    kept_n += s.level_values.size() + s.reference_values.size();
    kept.push_back(std::move(s));
  }
  if (kept.empty())
    throw Error(Errc::AllStrataDegenerate, "no stratum of {" + r.adjustment_set.front() +
                                               (r.adjustment_set.size() > 1 ? ", ..." : "") +
                                               "} contains both treatment levels");
  r.strata_used = kept.size();

  std::vector<double> weights;
  for (const auto& s : kept)
    weights.push_back(static_cast<double>(s.level_values.size() + s.reference_values.size()) /
                      static_cast<double>(kept_n));

  double est = 0.0;
  for (std::size_t s = 0; s < kept.size(); ++s)
    est += weights[s] * (mean_of(kept[s].level_values, 0, kept[s].level_values.size()) -
                         mean_of(kept[s].reference_values, 0, kept[s].reference_values.size()));
  r.estimate = est;

  // Pool each stratum's outcomes; a permutation relabels the first n_level as level.
  std::vector<std::vector<double>> pooled;
  for (const auto& s : kept) {
    auto p = s.level_values;
    p.insert(p.end(), s.reference_values.begin(), s.reference_values.end());
    pooled.push_back(std::move(p));
  }
  Rng rng(options.seed);
  const double observed = std::abs(est);
  const double tol = 1e-12 * std::max(1.0, observed);
  std::size_t count = 0;
  for (std::size_t p = 0; p < options.n_perm; ++p) {
    double stat = 0.0;
    for (std::size_t s = 0; s < kept.size(); ++s) {
      auto& v = pooled[s];
      shuffle(std::span<double>(v), rng);
      const auto nl = kept[s].level_values.size();
      stat += weights[s] * (mean_of(v, 0, nl) - mean_of(v, nl, v.size()));
    }
    if (std::abs(stat) >= observed - tol) ++count;
  }
  r.p_value = static_cast<double>(count + 1) / static_cast<double>(options.n_perm + 1);
  r.p_value_method = "stratified_permutation";
  return r;
}

namespace {

nlohmann::ordered_json ace_json(const ACEResult& r) {
  nlohmann::ordered_json j;
  j["treatment"] = r.treatment;
  j["outcome"] = r.outcome;
  j["contrast"] = {r.level, r.reference};
  j["adjustment_set"] = r.adjustment_set;
  j["estimate"] = r.estimate;
  j["p_value"] = r.p_value;
  j["p_value_method"] = r.p_value_method;
  j["n_per_group"] = {{"level", r.n_level}, {"reference", r.n_reference}};
  j["strata_used"] = r.strata_used;
  auto dropped = nlohmann::ordered_json::array();
  for (const auto& d : r.dropped_strata)
    dropped.push_back({{"stratum", d.label}, {"n_level", d.n_level}, {"n_reference", d.n_reference}});
  j["dropped_strata"] = dropped;
  return j;
}

}  // namespace

std::string ace_to_json(const ACEResult& result) { return ace_json(result).dump(2) + "\n"; }

std::string ace_to_json(const std::vector<ACEResult>& results) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : results) arr.push_back(ace_json(r));
  return arr.dump(2) + "\n";
}

}  // namespace lexcausal
