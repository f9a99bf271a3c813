#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexcausal {

enum class WordType { slang, nonslang, hybrid };

std::string_view to_string(WordType type) noexcept;
/// Throws Error(UnknownWordType) for anything but slang/nonslang/hybrid.
WordType parse_word_type(std::string_view text);

/// Fraction of a word's tweets tagged with each part of speech.
struct PosFractions {
  double noun = 0.0;
  double verb = 0.0;
  double adverb = 0.0;
  double adjective = 0.0;
};

struct PosFlags {
  bool noun = false;
  bool verb = false;
  bool adverb = false;
  bool adjective = false;

  friend bool operator==(const PosFlags&, const PosFlags&) = default;
};

inline constexpr double kDefaultPosThreshold = 0.05;

/// A flag is set when the fraction reaches the threshold (inclusive).
PosFlags pos_flags(const PosFractions& fractions, double threshold = kDefaultPosThreshold);

struct WordRecord {
  std::string word;
  WordType word_type = WordType::slang;
  std::vector<double> freq_samples_p1;  // tweets per sampled day
  std::vector<double> freq_samples_p2;
  int polysemy = 1;  // dictionary sense count
  PosFractions pos_fractions;
  std::int64_t tweet_count_p1 = 0;
  std::int64_t tweet_count_p2 = 0;

  bool is_hybrid() const noexcept { return word_type == WordType::hybrid; }
};

enum class RecordFormat { csv, json };

/// Reads and validates word records. Malformed rows raise Error whose
/// message carries the offending line (CSV) or record index (JSON).
std::vector<WordRecord> ingest_records(const std::filesystem::path& path, RecordFormat format);
std::vector<WordRecord> parse_records_csv(std::istream& in);
std::vector<WordRecord> parse_records_json(std::istream& in);

/// Infers the format from the extension (.json, otherwise csv).
RecordFormat format_for_path(const std::filesystem::path& path);

void write_records_csv(std::ostream& out, const std::vector<WordRecord>& records);

/// Closed integer range [lo, hi]; hi == nullopt means unbounded above.
struct PolysemyRange {
  int lo = 1;
  std::optional<int> hi;

  friend bool operator==(const PolysemyRange&, const PolysemyRange&) = default;
};

/// An ordered partition of the sense counts {1, 2, ...} into categories.
class CategorizationScheme {
 public:
  CategorizationScheme() = default;
  /// Validates that ranges start at 1, are contiguous, and the last one is open.
  explicit CategorizationScheme(std::vector<PolysemyRange> ranges);

  /// Parses the compact form "1|2-3|4+".
  static CategorizationScheme parse(std::string_view text);

  std::size_t category(int polysemy) const;
  std::size_t size() const noexcept { return ranges_.size(); }
  const std::vector<PolysemyRange>& ranges() const noexcept { return ranges_; }
  std::string to_string() const;

  friend bool operator==(const CategorizationScheme&, const CategorizationScheme&) = default;

 private:
  std::vector<PolysemyRange> ranges_;
};

/// Nine schemes ranging from a 2-bin to a 5-bin split.
std::vector<CategorizationScheme> default_polysemy_schemes();

/// Per-word values computed upstream of the causal table.
struct DerivedValues {
  std::optional<double> mean_frequency;  // mean of the two rescaled period means
  std::optional<double> freq_shift;
  std::optional<double> semantic_change;  // normalized to [0, 1]
};

struct TableRow {
  std::string word;
  bool nonslang = false;  // type: 0 = slang, 1 = nonslang
  double log_frequency = 0.0;
  double freq_shift = 0.0;
  double semantic_change = 0.0;
  std::size_t polysemy_category = 0;
  PosFlags pos;
};

struct VariableTable {
  std::vector<TableRow> rows;  // sorted by word
  std::size_t polysemy_levels = 0;
  /// Words left out when incomplete rows are dropped, with the reason.
  std::vector<std::pair<std::string, std::string>> dropped;
};

struct BuildTableOptions {
  double pos_threshold = kDefaultPosThreshold;
  /// When false, a non-hybrid word lacking a derived value is an error.
  bool drop_incomplete = false;
};

VariableTable build_table(const std::vector<WordRecord>& records,
                          const std::map<std::string, DerivedValues>& derived,
                          const CategorizationScheme& scheme,
                          const BuildTableOptions& options = {});

enum class VariableKind { continuous, categorical };

/// Column-major named data consumed by the CI tests and discovery code.
/// Categorical columns hold small nonnegative integer codes stored as doubles.
struct Dataset {
  std::vector<std::string> names;
  std::vector<VariableKind> kinds;
  std::vector<std::vector<double>> columns;

  std::size_t n_rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
  std::size_t n_cols() const noexcept { return columns.size(); }
  std::size_t index_of(std::string_view name) const;
  void add_column(std::string name, VariableKind kind, std::vector<double> values);
  /// Returns the dataset with columns reordered as `order` (indices into this).
  Dataset reordered(const std::vector<std::size_t>& order) const;
};

namespace columns {
inline constexpr std::string_view type = "type";
inline constexpr std::string_view log_frequency = "log_frequency";
inline constexpr std::string_view freq_shift = "freq_shift";
inline constexpr std::string_view semantic_change = "semantic_change";
inline constexpr std::string_view polysemy = "polysemy";
inline constexpr std::string_view pos_noun = "pos_noun";
inline constexpr std::string_view pos_verb = "pos_verb";
inline constexpr std::string_view pos_adverb = "pos_adverb";
inline constexpr std::string_view pos_adjective = "pos_adjective";
}  // namespace columns

Dataset to_dataset(const VariableTable& table);

}  // namespace lexcausal
