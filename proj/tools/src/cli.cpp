#include "lexcausal/tools/cli.hpp"

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "lexcausal/error.hpp"
#include "lexcausal/tools/commands.hpp"
#include "lexcausal/tools/config.hpp"
#include "lexcausal/tools/demo_data.hpp"

namespace lexcausal::tools {

namespace {

struct Overrides {
  std::string config;
  std::string records, embeddings, output_dir, scores, gold, graph;
  std::optional<long long> h;
  std::optional<std::string> metric;
  std::optional<long long> min_tweets;
  std::vector<double> alphas;
  std::optional<std::size_t> n_perm;
  std::optional<std::uint64_t> seed;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config, "Pipeline config (JSON)");
  cmd->add_option("--records", o.records, "Word records CSV or JSON");
  cmd->add_option("--embeddings", o.embeddings, "Embedding store root");
  cmd->add_option("-o,--output-dir", o.output_dir, "Output directory");
  cmd->add_option("--scores", o.scores, "Semantic change scores CSV");
  cmd->add_option("--gold", o.gold, "Gold ranking CSV (word,score)");
  cmd->add_option("--graph", o.graph, "Graph JSON for ace");
  cmd->add_option("--pca-dim", o.h, "PCA dimension (0 disables PCA)");
  cmd->add_option("--metric", o.metric, "Distance metric");
  cmd->add_option("--min-tweets", o.min_tweets, "Minimum occurrences per period");
  cmd->add_option("--alpha", o.alphas, "Significance levels (repeatable)");
  cmd->add_option("--n-perm", o.n_perm, "Permutations for permutation tests");
  cmd->add_option("--seed", o.seed, "Random seed");
}

PipelineConfig resolve(const Overrides& o) {
  PipelineConfig c = o.config.empty() ? PipelineConfig{} : load_config(o.config);
  if (!o.records.empty()) c.records = o.records;
  if (!o.embeddings.empty()) c.embeddings = o.embeddings;
  if (!o.output_dir.empty()) c.output_dir = o.output_dir;
  if (!o.scores.empty()) c.scores = o.scores;
  if (!o.gold.empty()) c.gold = o.gold;
  if (!o.graph.empty()) c.graph = o.graph;
  if (o.h) c.h = static_cast<Eigen::Index>(*o.h);
  if (o.metric) c.metric = parse_distance_metric(*o.metric);
  if (o.min_tweets) c.min_tweets = *o.min_tweets;
  if (!o.alphas.empty()) c.alphas = o.alphas;
  if (o.n_perm) c.n_perm = *o.n_perm;
  if (o.seed) c.seed = *o.seed;
  apply_environment(c);
  // Re-validate through the file format so overrides get the same checks.
  return config_from_json(config_to_json(c));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diachronic word-change analysis and causal discovery"};
  app.require_subcommand(1);
  Overrides o;

  using Command = std::function<CommandOutput(const PipelineConfig&)>;
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"semchange", "Semantic change scores from an embedding store", cmd_semchange},
      {"freq", "Frequency profiles, shift summaries and histogram data", cmd_freq},
      {"discover", "PC-stable sensitivity grid and aggregated graph", cmd_discover},
      {"ace", "Average causal effect of word type", cmd_ace},
      {"evaluate", "Spearman correlation of scores against a gold ranking", cmd_evaluate},
      {"groupstats", "Permutation tests between word-type groups", cmd_groupstats},
  };
  std::map<CLI::App*, Command> dispatch;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_overrides(sub, o);
    dispatch[sub] = fn;
  }

  auto* show = app.add_subcommand("config", "Print the effective config as JSON");
  add_overrides(show, o);

  DemoOptions demo;
  std::string demo_dir;
  auto* demo_cmd = app.add_subcommand("demo-data", "Write a small synthetic corpus and config");
  demo_cmd->add_option("dir", demo_dir, "Target directory")->required();
  demo_cmd->add_option("--words", demo.words, "Number of words");
  demo_cmd->add_option("--dim", demo.dim, "Embedding dimension");
  demo_cmd->add_option("--seed", demo.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (demo_cmd->parsed()) {
      const auto files = write_demo_data(demo_dir, demo);
      out << "wrote " << files.config.string() << '\n';
      return 0;
    }
    if (show->parsed()) {
      out << config_to_json(resolve(o));
      return 0;
    }
    for (const auto& [sub, fn] : dispatch) {
      if (!sub->parsed()) continue;
      const auto result = fn(resolve(o));
      for (const auto& note : result.notes) err << "note: " << note << '\n';
      for (const auto& f : result.files) out << "wrote " << f.string() << '\n';
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? 1 : 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace lexcausal::tools
