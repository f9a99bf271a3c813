#include "lexcausal/data_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "lexcausal/error.hpp"
#include "lexcausal/text_io.hpp"

namespace lexcausal {

namespace {

constexpr std::array<std::string_view, 11> kCsvColumns = {
    "word",          "type",     "polysemy", "tweets_p1",   "tweets_p2",     "freq_samples_p1",
    "freq_samples_p2", "noun_frac", "verb_frac", "adverb_frac", "adjective_frac"};

std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

void validate_word(const std::string& word, const std::string& ctx) {
  if (word.empty() || word.find_first_of(" \t") != std::string::npos)
    throw Error(Errc::InvalidArgument, ctx + "word must be a nonempty single token, got '" + word + "'");
}

int checked_polysemy(long long value, const std::string& ctx) {
  if (value < 1) throw Error(Errc::NonNumericCount, ctx + "polysemy must be >= 1, got " + std::to_string(value));
  return static_cast<int>(value);
}

std::int64_t checked_count(std::optional<long long> value, std::string_view field, const std::string& ctx) {
  if (!value || *value < 0)
    throw Error(Errc::NonNumericCount, ctx + std::string(field) + " must be a nonnegative integer");
  return *value;
}

double checked_fraction(std::optional<double> value, std::string_view field, const std::string& ctx) {
  if (!value || !(*value >= 0.0 && *value <= 1.0))
    throw Error(Errc::InvalidFraction, ctx + std::string(field) + " must be a number in [0,1]");
  return *value;
}

std::vector<double> parse_samples(std::string_view text, std::string_view field, const std::string& ctx) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(';', start);
    const auto token = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    out.push_back(static_cast<double>(checked_count(parse_integer(token), field, ctx)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(WordType type) noexcept {
  switch (type) {
    case WordType::slang: return "slang";
    case WordType::nonslang: return "nonslang";
    case WordType::hybrid: return "hybrid";
  }
  return "slang";
}

WordType parse_word_type(std::string_view text) {
  text = trim(text);
  if (text == "slang") return WordType::slang;
  if (text == "nonslang") return WordType::nonslang;
  if (text == "hybrid") return WordType::hybrid;
  throw Error(Errc::UnknownWordType, "unknown word type '" + std::string(text) + "'");
}

PosFlags pos_flags(const PosFractions& f, double threshold) {
  return PosFlags{f.noun >= threshold, f.verb >= threshold, f.adverb >= threshold, f.adjective >= threshold};
}

RecordFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".json" ? RecordFormat::json : RecordFormat::csv;
}

std::vector<WordRecord> ingest_records(const std::filesystem::path& path, RecordFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open records file " + path.string());
  return format == RecordFormat::csv ? parse_records_csv(in) : parse_records_json(in);
}

std::vector<WordRecord> parse_records_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw Error(Errc::MissingColumn, "records file has no header");

  const auto header = split_csv_line(line);
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < header.size(); ++i) position[std::string(trim(header[i]))] = i;
  std::array<std::size_t, kCsvColumns.size()> col{};
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
    auto it = position.find(std::string(kCsvColumns[c]));
    if (it == position.end())
      throw Error(Errc::MissingColumn, where(line_no) + "header lacks column '" + std::string(kCsvColumns[c]) + "'");
    col[c] = it->second;
  }

  std::vector<WordRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    const std::string ctx = where(line_no);
    if (fields.size() < header.size())
      throw Error(Errc::MissingColumn, ctx + "expected " + std::to_string(header.size()) + " fields, got " +
                                           std::to_string(fields.size()));
    auto field = [&](std::size_t c) { return std::string_view(fields[col[c]]); };

    WordRecord rec;
    rec.word = std::string(trim(field(0)));
    validate_word(rec.word, ctx);
    try {
      rec.word_type = parse_word_type(field(1));
    } catch (const Error& e) {
      throw Error(Errc::UnknownWordType, ctx + "unknown word type '" + std::string(trim(field(1))) + "'");
    }
    const auto poly = parse_integer(field(2));
    if (!poly) throw Error(Errc::NonNumericCount, ctx + "polysemy is not an integer");
    rec.polysemy = checked_polysemy(*poly, ctx);
    rec.tweet_count_p1 = checked_count(parse_integer(field(3)), "tweets_p1", ctx);
    rec.tweet_count_p2 = checked_count(parse_integer(field(4)), "tweets_p2", ctx);
    rec.freq_samples_p1 = parse_samples(field(5), "freq_samples_p1", ctx);
    rec.freq_samples_p2 = parse_samples(field(6), "freq_samples_p2", ctx);
    rec.pos_fractions.noun = checked_fraction(parse_double(field(7)), "noun_frac", ctx);
    rec.pos_fractions.verb = checked_fraction(parse_double(field(8)), "verb_frac", ctx);
    rec.pos_fractions.adverb = checked_fraction(parse_double(field(9)), "adverb_frac", ctx);
    rec.pos_fractions.adjective = checked_fraction(parse_double(field(10)), "adjective_frac", ctx);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<WordRecord> parse_records_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::IoError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(Errc::MissingColumn, "records JSON must be an array of objects");

  std::vector<WordRecord> records;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& obj = doc[i];
    const std::string ctx = "record " + std::to_string(i) + ": ";
    auto require = [&](const char* key) -> const nlohmann::json& {
      if (!obj.is_object() || !obj.contains(key))
        throw Error(Errc::MissingColumn, ctx + "missing field '" + key + "'");
      return obj.at(key);
    };
    auto count = [&](const nlohmann::json& v, std::string_view name) -> std::int64_t {
      if (!v.is_number_integer()) throw Error(Errc::NonNumericCount, ctx + std::string(name) + " must be an integer");
      return checked_count(v.get<long long>(), name, ctx);
    };
    auto samples = [&](const char* key) {
      std::vector<double> out;
      const auto& arr = require(key);
      if (!arr.is_array()) throw Error(Errc::NonNumericCount, ctx + key + " must be an array");
      for (const auto& v : arr) out.push_back(static_cast<double>(count(v, key)));
      return out;
    };

    WordRecord rec;
    const auto& word = require("word");
    if (!word.is_string()) throw Error(Errc::InvalidArgument, ctx + "word must be a string");
    rec.word = word.get<std::string>();
    validate_word(rec.word, ctx);
    const auto& type = require("type");
    if (!type.is_string()) throw Error(Errc::UnknownWordType, ctx + "type must be a string");
    try {
      rec.word_type = parse_word_type(type.get<std::string>());
    } catch (const Error&) {
      throw Error(Errc::UnknownWordType, ctx + "unknown word type '" + type.get<std::string>() + "'");
    }
    const auto& poly = require("polysemy");
    if (!poly.is_number_integer()) throw Error(Errc::NonNumericCount, ctx + "polysemy must be an integer");
    rec.polysemy = checked_polysemy(poly.get<long long>(), ctx);
    rec.tweet_count_p1 = count(require("tweets_p1"), "tweets_p1");
    rec.tweet_count_p2 = count(require("tweets_p2"), "tweets_p2");
    rec.freq_samples_p1 = samples("freq_samples_p1");
    rec.freq_samples_p2 = samples("freq_samples_p2");

    const auto& pos = require("pos_fractions");
    auto frac = [&](const char* key) {
      if (!pos.contains(key)) return 0.0;
      const auto& v = pos.at(key);
      return checked_fraction(v.is_number() ? std::optional<double>(v.get<double>()) : std::nullopt, key, ctx);
    };
    rec.pos_fractions = PosFractions{frac("noun"), frac("verb"), frac("adverb"), frac("adjective")};
    records.push_back(std::move(rec));
  }
  return records;
}

void write_records_csv(std::ostream& out, const std::vector<WordRecord>& records) {
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) out << (c ? "," : "") << kCsvColumns[c];
  out << '\n';
  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s.push_back(';');
      s += std::to_string(static_cast<long long>(v[i]));
    }
    return s;
  };
  for (const auto& r : records) {
    out << csv_escape(r.word) << ',' << to_string(r.word_type) << ',' << r.polysemy << ',' << r.tweet_count_p1
        << ',' << r.tweet_count_p2 << ',' << join(r.freq_samples_p1) << ',' << join(r.freq_samples_p2) << ','
        << format_double(r.pos_fractions.noun) << ',' << format_double(r.pos_fractions.verb) << ','
        << format_double(r.pos_fractions.adverb) << ',' << format_double(r.pos_fractions.adjective) << '\n';
  }
}

CategorizationScheme::CategorizationScheme(std::vector<PolysemyRange> ranges) : ranges_(std::move(ranges)) {
  if (ranges_.empty()) throw Error(Errc::InvalidScheme, "scheme needs at least one range");
  int expected = 1;
  for (std::size_t i = 0; i < ranges_.size(); ++i) {
    const auto& r = ranges_[i];
    if (r.lo != expected)
      throw Error(Errc::InvalidScheme, "ranges must be contiguous from 1; range " + std::to_string(i) +
                                           " starts at " + std::to_string(r.lo));
    const bool last = i + 1 == ranges_.size();
    if (last != !r.hi.has_value())
      throw Error(Errc::InvalidScheme, "only the last range may be (and must be) unbounded");
    if (r.hi) {
      if (*r.hi < r.lo) throw Error(Errc::InvalidScheme, "empty range in scheme");
      expected = *r.hi + 1;
    }
  }
}

CategorizationScheme CategorizationScheme::parse(std::string_view text) {
  std::vector<PolysemyRange> ranges;
  std::size_t start = 0;
  const std::string original(text);
  while (true) {
    const auto end = text.find('|', start);
    auto token = trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    PolysemyRange r;
    if (!token.empty() && token.back() == '+') {
      const auto lo = parse_integer(token.substr(0, token.size() - 1));
      if (!lo) throw Error(Errc::InvalidScheme, "bad range '" + std::string(token) + "' in '" + original + "'");
      r.lo = static_cast<int>(*lo);
    } else if (const auto dash = token.find('-'); dash != std::string_view::npos) {
      const auto lo = parse_integer(token.substr(0, dash));
      const auto hi = parse_integer(token.substr(dash + 1));
      if (!lo || !hi) throw Error(Errc::InvalidScheme, "bad range '" + std::string(token) + "' in '" + original + "'");
      r.lo = static_cast<int>(*lo);
      r.hi = static_cast<int>(*hi);
    } else {
      const auto v = parse_integer(token);
      if (!v) throw Error(Errc::InvalidScheme, "bad range '" + std::string(token) + "' in '" + original + "'");
      r.lo = static_cast<int>(*v);
      r.hi = static_cast<int>(*v);
    }
    ranges.push_back(r);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return CategorizationScheme(std::move(ranges));
}

std::size_t CategorizationScheme::category(int polysemy) const {
  if (polysemy < 1) throw Error(Errc::InvalidArgument, "polysemy must be >= 1");
  for (std::size_t i = 0; i < ranges_.size(); ++i)
    if (!ranges_[i].hi || polysemy <= *ranges_[i].hi) return i;
  throw Error(Errc::InvalidScheme, "scheme does not cover polysemy " + std::to_string(polysemy));
}

std::string CategorizationScheme::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < ranges_.size(); ++i) {
    if (i) out.push_back('|');
    const auto& r = ranges_[i];
    if (!r.hi)
      out += std::to_string(r.lo) + "+";
    else if (*r.hi == r.lo)
      out += std::to_string(r.lo);
    else
      out += std::to_string(r.lo) + "-" + std::to_string(*r.hi);
  }
  return out;
}

std::vector<CategorizationScheme> default_polysemy_schemes() {
  static const char* const kSchemes[] = {
      "1|2+",     "1-2|3+",     "1|2|3+",       "1|2-3|4+",        "1-2|3-4|5+",
      "1|2|3-4|5+", "1|2-3|4-6|7+", "1|2|3|4-5|6+", "1-2|3-4|5-7|8-10|11+",
  };
  std::vector<CategorizationScheme> out;
  for (const char* s : kSchemes) out.push_back(CategorizationScheme::parse(s));
  return out;
}

VariableTable build_table(const std::vector<WordRecord>& records,
                          const std::map<std::string, DerivedValues>& derived,
                          const CategorizationScheme& scheme, const BuildTableOptions& options) {
  VariableTable table;
  table.polysemy_levels = scheme.size();
  for (const auto& rec : records) {
    if (rec.is_hybrid()) continue;
    auto reject = [&](const std::string& reason) {
      if (!options.drop_incomplete) throw Error(Errc::MissingDerivedValue, rec.word + ": " + reason);
      table.dropped.emplace_back(rec.word, reason);
    };
    const auto it = derived.find(rec.word);
    if (it == derived.end()) {
      reject("no derived values");
      continue;
    }
    const auto& d = it->second;
    if (!d.mean_frequency || !(*d.mean_frequency > 0.0)) {
      reject("missing or nonpositive mean frequency");
      continue;
    }
    if (!d.freq_shift || !std::isfinite(*d.freq_shift)) {
      reject("missing frequency shift");
      continue;
    }
    if (!d.semantic_change || !std::isfinite(*d.semantic_change)) {
      reject("missing semantic change score");
      continue;
    }
    TableRow row;
    row.word = rec.word;
    row.nonslang = rec.word_type == WordType::nonslang;
    row.log_frequency = std::log(*d.mean_frequency);
    row.freq_shift = *d.freq_shift;
    row.semantic_change = *d.semantic_change;
    row.polysemy_category = scheme.category(rec.polysemy);
    row.pos = pos_flags(rec.pos_fractions, options.pos_threshold);
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const TableRow& a, const TableRow& b) { return a.word < b.word; });
  std::sort(table.dropped.begin(), table.dropped.end());
  return table;
}

std::size_t Dataset::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw Error(Errc::UnknownNode, "no column named '" + std::string(name) + "'");
}

void Dataset::add_column(std::string name, VariableKind kind, std::vector<double> values) {
  if (!columns.empty() && values.size() != n_rows())
    throw Error(Errc::InvalidArgument, "column '" + name + "' has " + std::to_string(values.size()) +
                                           " rows, expected " + std::to_string(n_rows()));
  names.push_back(std::move(name));
  kinds.push_back(kind);
  columns.push_back(std::move(values));
}

Dataset Dataset::reordered(const std::vector<std::size_t>& order) const {
  Dataset out;
  for (auto i : order) out.add_column(names.at(i), kinds.at(i), columns.at(i));
  return out;
}

Dataset to_dataset(const VariableTable& table) {
  const auto n = table.rows.size();
  std::vector<double> type(n), logf(n), shift(n), sem(n), poly(n), noun(n), verb(n), adv(n), adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = table.rows[i];
    type[i] = r.nonslang ? 1.0 : 0.0;
    logf[i] = r.log_frequency;
    shift[i] = r.freq_shift;
    sem[i] = r.semantic_change;
    poly[i] = static_cast<double>(r.polysemy_category);
    noun[i] = r.pos.noun;
    verb[i] = r.pos.verb;
    adv[i] = r.pos.adverb;
    adj[i] = r.pos.adjective;
  }
  Dataset ds;
  ds.add_column(std::string(columns::type), VariableKind::categorical, std::move(type));
  ds.add_column(std::string(columns::log_frequency), VariableKind::continuous, std::move(logf));
  ds.add_column(std::string(columns::freq_shift), VariableKind::continuous, std::move(shift));
  ds.add_column(std::string(columns::semantic_change), VariableKind::continuous, std::move(sem));
  ds.add_column(std::string(columns::polysemy), VariableKind::categorical, std::move(poly));
  ds.add_column(std::string(columns::pos_noun), VariableKind::categorical, std::move(noun));
  ds.add_column(std::string(columns::pos_verb), VariableKind::categorical, std::move(verb));
  ds.add_column(std::string(columns::pos_adverb), VariableKind::categorical, std::move(adv));
  ds.add_column(std::string(columns::pos_adjective), VariableKind::categorical, std::move(adj));
  return ds;
}

}  // namespace lexcausal
