#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lexcausal/data_model.hpp"
#include "lexcausal/tools/config.hpp"

namespace lexcausal::tools {

struct CommandOutput {
  std::vector<std::filesystem::path> files;  // written, in order
  std::vector<std::string> notes;            // skips, warnings
};

/// semantic_change.csv (word,raw,normalized,n_p1,n_p2,metric,h) and
/// semantic_change_skipped.csv (word,reason).
CommandOutput cmd_semchange(const PipelineConfig& config);

/// frequency.csv, frequency_summary.csv, frequency_histogram.csv,
/// frequency_excluded.csv.
CommandOutput cmd_freq(const PipelineConfig& config);

/// graph.json, graph.dot, sensitivity.txt, sensitivity.csv,
/// qq_diagnostics.csv, variable_table.csv, discover_notes.txt.
CommandOutput cmd_discover(const PipelineConfig& config);

/// ace.json for type -> semantic_change and type -> freq_shift.
CommandOutput cmd_ace(const PipelineConfig& config);

/// evaluation.json with Spearman rho of scores against gold.
CommandOutput cmd_evaluate(const PipelineConfig& config);

/// groupstats.csv: permutation tests between word-type groups.
CommandOutput cmd_groupstats(const PipelineConfig& config);

/// word -> normalized score from a semantic_change.csv file.
std::map<std::string, double> read_scores_csv(const std::filesystem::path& path, const std::string& column = "normalized");

/// Derived values for every record: frequency from the records, semantic
/// change from the scores file.
std::map<std::string, DerivedValues> derive_values(const PipelineConfig& config,
                                                   const std::vector<WordRecord>& records);

}  // namespace lexcausal::tools
