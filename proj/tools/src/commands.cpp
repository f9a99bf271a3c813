#include "lexcausal/tools/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lexcausal/causal_inference.hpp"
#include "lexcausal/embedding_store.hpp"
#include "lexcausal/error.hpp"
#include "lexcausal/frequency.hpp"
#include "lexcausal/graph.hpp"
#include "lexcausal/random.hpp"
#include "lexcausal/semantic_change.hpp"
#include "lexcausal/sensitivity.hpp"
#include "lexcausal/stats.hpp"
#include "lexcausal/text_io.hpp"

namespace lexcausal::tools {

namespace {

void write_file(CommandOutput& out, const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(Errc::IoError, "cannot write " + path.string());
  f << content;
  if (!f) throw Error(Errc::IoError, "failed writing " + path.string());
  out.files.push_back(path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

std::vector<WordRecord> load_records(const PipelineConfig& config) {
  if (config.records.empty()) throw Error(Errc::ConfigError, "no records path configured");
  auto records = ingest_records(config.records, format_for_path(config.records));
  if (records.empty()) throw Error(Errc::EmptySamples, config.records.string() + " contains no words");
  return records;
}

// FNV-1a, so per-word seeds do not depend on processing order.
std::uint64_t word_stream(const std::string& word) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : word) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::map<std::string, double> read_scores_csv(const std::filesystem::path& path, const std::string& column) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::MissingColumn, path.string() + " is empty");
  const auto header = split_csv_line(line);
  std::size_t word_col = header.size(), value_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto name = trim(header[i]);
    if (name == "word") word_col = i;
    if (name == column) value_col = i;
  }
  if (word_col == header.size() || value_col == header.size())
    throw Error(Errc::MissingColumn, path.string() + ": header needs 'word' and '" + column + "'");
  std::map<std::string, double> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() <= std::max(word_col, value_col))
      throw Error(Errc::MissingColumn, path.string() + " line " + std::to_string(line_no) + ": too few fields");
    const auto v = parse_double(trim(fields[value_col]));
    if (!v)
      throw Error(Errc::NonNumericCount, path.string() + " line " + std::to_string(line_no) + ": '" +
                                             fields[value_col] + "' is not a number");
    out[std::string(trim(fields[word_col]))] = *v;
  }
  return out;
}

std::map<std::string, DerivedValues> derive_values(const PipelineConfig& config,
                                                   const std::vector<WordRecord>& records) {
  const auto freq = analyze_frequencies(records, config.rescale_factor);
  const auto scores = read_scores_csv(config.scores_path());
  std::map<std::string, DerivedValues> out;
  for (const auto& p : freq.profiles) {
    auto& d = out[p.word];
    if (p.freq > 0.0) d.mean_frequency = p.freq;
    d.freq_shift = p.freq_shift;
  }
  for (const auto& rec : records) {
    const auto it = scores.find(rec.word);
    if (it != scores.end()) out[rec.word].semantic_change = it->second;
  }
  return out;
}

CommandOutput cmd_semchange(const PipelineConfig& config) {
  if (config.embeddings.empty()) throw Error(Errc::ConfigError, "no embeddings root configured");
  const auto manifest = read_manifest(config.embeddings);
  if (manifest.periods.size() < 2) throw Error(Errc::ConfigError, "manifest must list two periods");
  const auto& p1 = manifest.periods[0];
  const auto& p2 = manifest.periods[1];

  std::set<std::string> in_manifest;
  for (const auto& w : manifest.words) in_manifest.insert(w.word);
  std::set<std::string> words = in_manifest;
  std::vector<std::pair<std::string, std::string>> skipped;
  if (!config.records.empty()) {
    words.clear();
    for (const auto& r : load_records(config)) {
      if (in_manifest.count(r.word))
        words.insert(r.word);
      else
        skipped.emplace_back(r.word, "no embeddings in store");
    }
  }

  struct Row {
    double raw;
    Eigen::Index n1, n2;
  };
  std::map<std::string, Row> rows;
  std::vector<std::pair<std::string, double>> raw;
  for (const auto& word : words) {
    const auto e1 = load_embeddings(config.embeddings, manifest, word, p1);
    const auto e2 = load_embeddings(config.embeddings, manifest, word, p2);
    auto sc = config.semantic_change_config();
    sc.clustering.seed = derive_seed(config.seed, word_stream(word));
    try {
      check_occurrences(e1, e2, sc.min_tweets);
      const double r = semantic_change_raw(e1, e2, sc);
      rows[word] = Row{r, e1.count(), e2.count()};
      raw.emplace_back(word, r);
    } catch (const Error& e) {
      if (e.code() != Errc::TooFewOccurrences && e.code() != Errc::ZeroVectorForCosine &&
          e.code() != Errc::EmptySet)
        throw;
      skipped.emplace_back(word, e.what());
    }
  }
  const auto scores = normalize_scores(raw);

  CommandOutput out;
  std::ostringstream csv;
  csv << "word,raw,normalized,n_p1,n_p2,metric,h\n";
  for (const auto& s : scores) {
    const auto& r = rows.at(s.word);
    csv << csv_escape(s.word) << ',' << format_double(s.raw) << ',' << format_double(s.normalized) << ',' << r.n1
        << ',' << r.n2 << ',' << to_string(config.metric) << ',' << config.h << '\n';
  }
  write_file(out, config.output_dir / "semantic_change.csv", csv.str());

  std::sort(skipped.begin(), skipped.end());
  std::ostringstream skip;
  skip << "word,reason\n";
  for (const auto& [w, why] : skipped) {
    skip << csv_escape(w) << ',' << csv_escape(why) << '\n';
    out.notes.push_back("skipped " + w + ": " + why);
  }
  write_file(out, config.output_dir / "semantic_change_skipped.csv", skip.str());
  return out;
}

CommandOutput cmd_freq(const PipelineConfig& config) {
  const auto records = load_records(config);
  const auto analysis = analyze_frequencies(records, config.rescale_factor);
  CommandOutput out;

  std::ostringstream csv;
  csv << "word,type,mean_p1,mean_p2_raw,mean_p2,freq,freq_shift,abs_shift\n";
  for (const auto& p : analysis.profiles)
    csv << csv_escape(p.word) << ',' << to_string(p.word_type) << ',' << format_double(p.mean_p1) << ','
        << format_double(p.mean_p2_raw) << ',' << format_double(p.mean_p2) << ',' << format_double(p.freq) << ','
        << optional_cell(p.freq_shift) << ',' << optional_cell(p.abs_shift) << '\n';
  write_file(out, config.output_dir / "frequency.csv", csv.str());

  const std::vector<std::pair<std::string, std::optional<WordType>>> groups = {
      {"all", std::nullopt}, {"slang", WordType::slang}, {"nonslang", WordType::nonslang}, {"hybrid", WordType::hybrid}};
  auto values = [&](std::optional<WordType> g, bool absolute) {
    std::vector<double> v;
    for (const auto& p : analysis.profiles)
      if ((!g || p.word_type == *g) && p.freq_shift) v.push_back(absolute ? *p.abs_shift : *p.freq_shift);
    return v;
  };

  std::ostringstream summary;
  summary << "group,variable,n,mean,sd,se\n";
  for (const auto& [name, g] : groups) {
    for (const bool absolute : {false, true}) {
      const auto v = values(g, absolute);
      if (v.empty()) continue;
      const auto s = summarize(v);
      summary << name << ',' << (absolute ? "abs_shift" : "freq_shift") << ',' << s.n << ',' << format_double(s.mean)
              << ',' << format_double(s.sd) << ',' << format_double(s.se) << '\n';
    }
  }
  write_file(out, config.output_dir / "frequency_summary.csv", summary.str());

  std::ostringstream hist;
  hist << "group,lo,hi,count\n";
  const auto all = values(std::nullopt, false);
  if (!all.empty()) {
    double lo = *std::min_element(all.begin(), all.end());
    double hi = *std::max_element(all.begin(), all.end());
    if (!(hi > lo)) lo -= 0.5, hi += 0.5;
    for (const auto& [name, g] : groups) {
      const auto v = values(g, false);
      if (v.empty()) continue;
      for (const auto& b : histogram(v, lo, hi, config.histogram_bins))
        hist << name << ',' << format_double(b.lo) << ',' << format_double(b.hi) << ',' << b.count << '\n';
    }
  }
  write_file(out, config.output_dir / "frequency_histogram.csv", hist.str());

  std::ostringstream excl;
  excl << "word,reason\n";
  for (const auto& [w, why] : analysis.excluded) excl << csv_escape(w) << ',' << csv_escape(why) << '\n';
  write_file(out, config.output_dir / "frequency_excluded.csv", excl.str());

  nlohmann::ordered_json meta;
  meta["rescale_factor"] = analysis.rescale_factor;
  meta["rescale_overridden"] = analysis.rescale_overridden;
  write_file(out, config.output_dir / "frequency_rescale.json", meta.dump(2) + "\n");
  return out;
}

namespace {

BuildTableOptions table_options(const PipelineConfig& config) {
  BuildTableOptions o;
  o.pos_threshold = config.pos_threshold;
  o.drop_incomplete = config.drop_incomplete;
  return o;
}

std::string table_csv(const VariableTable& table, const Dataset& data) {
  std::ostringstream csv;
  csv << "word";
  for (const auto& n : data.names) csv << ',' << n;
  csv << '\n';
  for (std::size_t r = 0; r < data.n_rows(); ++r) {
    csv << csv_escape(table.rows[r].word);
    for (const auto& col : data.columns) csv << ',' << format_double(col[r]);
    csv << '\n';
  }
  return csv.str();
}

}  // namespace

CommandOutput cmd_discover(const PipelineConfig& config) {
  const auto records = load_records(config);
  const auto derived = derive_values(config, records);
  const auto schemes = config.parsed_schemes();
  const auto options = table_options(config);

  CommandOutput out;
  const auto first_table = build_table(records, derived, schemes.front(), options);
  const auto first_data = to_dataset(first_table);
  for (const auto& [w, why] : first_table.dropped) out.notes.push_back("dropped " + w + ": " + why);

  SensitivityOptions so;
  so.ci_bins = config.ci_bins;
  so.max_conditioning = config.max_conditioning;
  so.stable_threshold = config.stable_threshold;
  so.solid_threshold = config.solid_threshold;
  so.manual_orientations = config.manual_orientations;
  const auto report = sensitivity_grid(
      [&](const CategorizationScheme& s) { return to_dataset(build_table(records, derived, s, options)); },
      config.alphas, schemes, so);
  out.notes.insert(out.notes.end(), report.warnings.begin(), report.warnings.end());

  const auto fractions = report.fractions();
  write_file(out, config.output_dir / "graph.json", graph_to_json(report.final_graph, &fractions));
  write_file(out, config.output_dir / "graph.dot", graph_to_dot(report.final_graph, &fractions));
  write_file(out, config.output_dir / "sensitivity.txt", report.format_table());
  write_file(out, config.output_dir / "sensitivity.csv", report.to_csv());

  std::ostringstream qq;
  qq << "variable,theoretical,sample\n";
  for (std::size_t j = 0; j < first_data.n_cols(); ++j) {
    if (first_data.kinds[j] != VariableKind::continuous || first_data.n_rows() < 2) continue;
    for (const auto& p : qq_points(first_data.columns[j]))
      qq << first_data.names[j] << ',' << format_double(p.theoretical) << ',' << format_double(p.sample) << '\n';
  }
  write_file(out, config.output_dir / "qq_diagnostics.csv", qq.str());
  write_file(out, config.output_dir / "variable_table.csv", table_csv(first_table, first_data));

  std::ostringstream notes;
  for (const auto& n : out.notes) notes << n << '\n';
  write_file(out, config.output_dir / "discover_notes.txt", notes.str());
  return out;
}

CommandOutput cmd_ace(const PipelineConfig& config) {
  const auto records = load_records(config);
  const auto derived = derive_values(config, records);
  const auto graph = graph_from_json(read_file(config.graph_path()));
  const auto schemes = config.parsed_schemes();
  const auto data = to_dataset(build_table(records, derived, schemes.front(), table_options(config)));

  ACEOptions ao;
  ao.bins = config.ci_bins;
  ao.n_perm = config.n_perm;
  std::vector<ACEResult> results;
  std::uint64_t stream = 0;
  for (const auto outcome : {columns::semantic_change, columns::freq_shift}) {
    const std::string t(columns::type);
    const std::string y(outcome);
    ao.seed = derive_seed(config.seed, stream++);
    results.push_back(estimate_ace(data, t, y, identify_adjustment_set(graph, t, y), 1.0, 0.0, ao));
  }
  CommandOutput out;
  write_file(out, config.output_dir / "ace.json", ace_to_json(results));
  return out;
}

CommandOutput cmd_evaluate(const PipelineConfig& config) {
  if (config.gold.empty()) throw Error(Errc::ConfigError, "no gold path configured");
  const auto scores = read_scores_csv(config.scores_path(), "normalized");
  const auto gold = read_scores_csv(config.gold, "score");
  const auto eval = evaluate_ranking(scores, gold);
  nlohmann::ordered_json j;
  j["rho"] = eval.rho;
  j["p_value"] = eval.p_value;
  j["n"] = eval.n;
  CommandOutput out;
  write_file(out, config.output_dir / "evaluation.json", j.dump(2) + "\n");
  return out;
}

CommandOutput cmd_groupstats(const PipelineConfig& config) {
  const auto records = load_records(config);
  const auto derived = derive_values(config, records);
  const std::vector<std::string> variables = {"semantic_change", "freq_shift", "abs_shift", "polysemy"};
  const std::vector<std::pair<WordType, WordType>> pairs = {{WordType::slang, WordType::nonslang},
                                                            {WordType::slang, WordType::hybrid},
                                                            {WordType::nonslang, WordType::hybrid}};
  auto value_of = [&](const WordRecord& r, const std::string& var) -> std::optional<double> {
    if (var == "polysemy") return static_cast<double>(r.polysemy);
    const auto it = derived.find(r.word);
    if (it == derived.end()) return std::nullopt;
    if (var == "semantic_change") return it->second.semantic_change;
    if (!it->second.freq_shift) return std::nullopt;
    return var == "freq_shift" ? *it->second.freq_shift : std::abs(*it->second.freq_shift);
  };

  std::ostringstream csv;
  csv << "variable,group_a,group_b,n_a,n_b,mean_a,mean_b,p_value,mode\n";
  std::uint64_t stream = 0;
  for (const auto& var : variables) {
    for (const auto& [ga, gb] : pairs) {
      std::vector<double> a, b;
      for (const auto& r : records) {
        if (r.word_type != ga && r.word_type != gb) continue;
        if (const auto v = value_of(r, var)) (r.word_type == ga ? a : b).push_back(*v);
      }
      if (a.empty() || b.empty())
        throw Error(Errc::EmptyGroup, "no " + std::string(to_string(a.empty() ? ga : gb)) + " words with " + var);
      PermutationOptions po;
      po.n_perm = config.n_perm;
      po.seed = derive_seed(config.seed, stream++);
      po.mode = binomial_coefficient(a.size() + b.size(), a.size()) <= kExactEnumerationLimit
                    ? PermutationMode::exact
                    : PermutationMode::sampled;
      const double p = permutation_test(a, b, po);
      csv << var << ',' << to_string(ga) << ',' << to_string(gb) << ',' << a.size() << ',' << b.size() << ','
          << format_double(summarize(a).mean) << ',' << format_double(summarize(b).mean) << ','
          << format_double(p) << ',' << (po.mode == PermutationMode::exact ? "exact" : "sampled") << '\n';
    }
  }
  CommandOutput out;
  write_file(out, config.output_dir / "groupstats.csv", csv.str());
  return out;
}

}  // namespace lexcausal::tools
