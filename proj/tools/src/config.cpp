#include "lexcausal/tools/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lexcausal/error.hpp"

namespace lexcausal::tools {

std::vector<CategorizationScheme> PipelineConfig::parsed_schemes() const {
  if (schemes.empty()) return default_polysemy_schemes();
  std::vector<CategorizationScheme> out;
  for (const auto& s : schemes) out.push_back(CategorizationScheme::parse(s));
  return out;
}

SemanticChangeConfig PipelineConfig::semantic_change_config() const {
  SemanticChangeConfig c;
  c.h = h;
  c.metric = metric;
  c.min_tweets = min_tweets;
  c.method = score_method;
  c.clustering.method = cluster_method;
  c.clustering.selector = k_selector;
  c.clustering.k_max = k_max;
  c.clustering.restarts = cluster_restarts;
  c.clustering.silhouette_threshold = silhouette_threshold;
  c.clustering.seed = seed;
  return c;
}

std::filesystem::path PipelineConfig::scores_path() const {
  return scores.empty() ? output_dir / "semantic_change.csv" : scores;
}

std::filesystem::path PipelineConfig::graph_path() const { return graph.empty() ? output_dir / "graph.json" : graph; }

namespace {

using json = nlohmann::ordered_json;

const std::set<std::string> kKeys = {
    "records",         "embeddings",       "output_dir",      "scores",       "gold",
    "graph",           "h",                "metric",          "min_tweets",   "score_method",
    "cluster_method",  "k_selector",       "k_max",           "cluster_restarts",
    "silhouette_threshold", "pos_threshold", "alphas",        "schemes",      "ci_bins",
    "max_conditioning", "stable_threshold", "solid_threshold", "manual_orientations",
    "drop_incomplete", "rescale_factor",   "histogram_bins",  "n_perm",       "seed"};

template <class T>
void read(const json& doc, const char* key, T& field) {
  if (doc.contains(key)) field = doc.at(key).get<T>();
}

std::filesystem::path read_path(const json& doc, const char* key, const std::filesystem::path& fallback) {
  return doc.contains(key) ? std::filesystem::path(doc.at(key).get<std::string>()) : fallback;
}

}  // namespace

PipelineConfig config_from_json(const std::string& text) {
  PipelineConfig c;
  try {
    const auto doc = json::parse(text);
    if (!doc.is_object()) throw Error(Errc::ConfigError, "config must be a JSON object");
    for (const auto& [key, value] : doc.items())
      if (!kKeys.count(key)) throw Error(Errc::ConfigError, "unknown config key '" + key + "'");

    c.records = read_path(doc, "records", c.records);
    c.embeddings = read_path(doc, "embeddings", c.embeddings);
    c.output_dir = read_path(doc, "output_dir", c.output_dir);
    c.scores = read_path(doc, "scores", c.scores);
    c.gold = read_path(doc, "gold", c.gold);
    c.graph = read_path(doc, "graph", c.graph);
    read(doc, "h", c.h);
    if (doc.contains("metric")) c.metric = parse_distance_metric(doc.at("metric").get<std::string>());
    read(doc, "min_tweets", c.min_tweets);
    if (doc.contains("score_method")) c.score_method = parse_score_method(doc.at("score_method").get<std::string>());
    if (doc.contains("cluster_method"))
      c.cluster_method = parse_cluster_method(doc.at("cluster_method").get<std::string>());
    if (doc.contains("k_selector")) c.k_selector = parse_k_selector(doc.at("k_selector").get<std::string>());
    read(doc, "k_max", c.k_max);
    read(doc, "cluster_restarts", c.cluster_restarts);
    read(doc, "silhouette_threshold", c.silhouette_threshold);
    read(doc, "pos_threshold", c.pos_threshold);
    read(doc, "alphas", c.alphas);
    read(doc, "schemes", c.schemes);
    read(doc, "ci_bins", c.ci_bins);
    if (doc.contains("max_conditioning") && !doc.at("max_conditioning").is_null())
      c.max_conditioning = doc.at("max_conditioning").get<std::size_t>();
    read(doc, "stable_threshold", c.stable_threshold);
    read(doc, "solid_threshold", c.solid_threshold);
    if (doc.contains("manual_orientations")) {
      c.manual_orientations.clear();
      for (const auto& pair : doc.at("manual_orientations")) {
        if (!pair.is_array() || pair.size() != 2)
          throw Error(Errc::ConfigError, "manual_orientations entries must be [from, to]");
        c.manual_orientations.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
      }
    }
    read(doc, "drop_incomplete", c.drop_incomplete);
    if (doc.contains("rescale_factor") && !doc.at("rescale_factor").is_null())
      c.rescale_factor = doc.at("rescale_factor").get<double>();
    read(doc, "histogram_bins", c.histogram_bins);
    read(doc, "n_perm", c.n_perm);
    read(doc, "seed", c.seed);
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, std::string("malformed config: ") + e.what());
  }
  if (c.alphas.empty()) throw Error(Errc::ConfigError, "alphas must not be empty");
  for (double a : c.alphas)
    if (!(a > 0.0 && a < 1.0)) throw Error(Errc::ConfigError, "alpha values must lie in (0,1)");
  if (c.h < 0) throw Error(Errc::ConfigError, "h must be >= 0");
  if (c.ci_bins < 2) throw Error(Errc::ConfigError, "ci_bins must be >= 2");
  c.parsed_schemes();
  return c;
}

std::string config_to_json(const PipelineConfig& c) {
  json doc;
  doc["records"] = c.records.string();
  doc["embeddings"] = c.embeddings.string();
  doc["output_dir"] = c.output_dir.string();
  doc["scores"] = c.scores.string();
  doc["gold"] = c.gold.string();
  doc["graph"] = c.graph.string();
  doc["h"] = c.h;
  doc["metric"] = std::string(to_string(c.metric));
  doc["min_tweets"] = c.min_tweets;
  doc["score_method"] = std::string(to_string(c.score_method));
  doc["cluster_method"] = std::string(to_string(c.cluster_method));
  doc["k_selector"] = std::string(to_string(c.k_selector));
  doc["k_max"] = c.k_max;
  doc["cluster_restarts"] = c.cluster_restarts;
  doc["silhouette_threshold"] = c.silhouette_threshold;
  doc["pos_threshold"] = c.pos_threshold;
  doc["alphas"] = c.alphas;
  doc["schemes"] = c.schemes;
  doc["ci_bins"] = c.ci_bins;
  doc["max_conditioning"] = c.max_conditioning ? json(*c.max_conditioning) : json(nullptr);
  doc["stable_threshold"] = c.stable_threshold;
  doc["solid_threshold"] = c.solid_threshold;
  auto manual = json::array();
  for (const auto& [from, to] : c.manual_orientations) manual.push_back({from, to});
  doc["manual_orientations"] = manual;
  doc["drop_incomplete"] = c.drop_incomplete;
  doc["rescale_factor"] = c.rescale_factor ? json(*c.rescale_factor) : json(nullptr);
  doc["histogram_bins"] = c.histogram_bins;
  doc["n_perm"] = c.n_perm;
  doc["seed"] = c.seed;
  return doc.dump(2) + "\n";
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  auto config = config_from_json(buf.str());
  // Relative paths in a config file are resolved against its directory.
  const auto base = path.parent_path();
  for (auto* p : {&config.records, &config.embeddings, &config.output_dir, &config.scores, &config.gold,
                  &config.graph})
    if (!p->empty() && p->is_relative()) *p = base / *p;
  return config;
}

void apply_environment(PipelineConfig& config) {
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) config.output_dir = dir;
}

}  // namespace lexcausal::tools
