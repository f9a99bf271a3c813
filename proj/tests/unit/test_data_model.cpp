#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "lexcausal/data_model.hpp"
#include "lexcausal/error.hpp"
#include "lexcausal/text_io.hpp"

using namespace lexcausal;

namespace {

const char* kHeader =
    "word,type,polysemy,tweets_p1,tweets_p2,freq_samples_p1,freq_samples_p2,noun_frac,verb_frac,adverb_frac,"
    "adjective_frac\n";

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(TextIo, SplitsQuotedFields) {
  const auto f = split_csv_line(R"(a,"b,c","say ""hi""",)");
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[1], "b,c");
  EXPECT_EQ(f[2], "say \"hi\"");
  EXPECT_EQ(f[3], "");
  EXPECT_EQ(csv_escape("x,y"), "\"x,y\"");
  EXPECT_EQ(csv_escape("plain"), "plain");
}

TEST(TextIo, DoubleFormattingRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.125}) EXPECT_EQ(*parse_double(format_double(v)), v);
  EXPECT_EQ(format_fixed(77.777, 1), "77.8");
  EXPECT_FALSE(parse_double("1.5x"));
  EXPECT_FALSE(parse_integer("2.0"));
  EXPECT_EQ(*parse_integer(" 42 "), 42);
}

TEST(WordType, ParsesKnownLabels) {
  EXPECT_EQ(parse_word_type("slang"), WordType::slang);
  EXPECT_EQ(parse_word_type("nonslang"), WordType::nonslang);
  EXPECT_EQ(parse_word_type("hybrid"), WordType::hybrid);
  EXPECT_EQ(code_of([] { parse_word_type("formal"); }), Errc::UnknownWordType);
}

TEST(PosFlags, ThresholdIsInclusive) {
  const auto f = pos_flags(PosFractions{0.05, 0.049999, 0.9, 0.0});
  EXPECT_TRUE(f.noun);
  EXPECT_FALSE(f.verb);
  EXPECT_TRUE(f.adverb);
  EXPECT_FALSE(f.adjective);
  EXPECT_TRUE(pos_flags(PosFractions{0.02, 0, 0, 0}, 0.01).noun);
}

TEST(Records, ParsesCsv) {
  std::istringstream in(std::string(kHeader) + "lit,slang,3,200,180,5;6;7,8;9,0.6,0.3,0.05,0.05\n" +
                        "\nbank,hybrid,2,150,151,1,2,1,0,0,0\n");
  const auto recs = parse_records_csv(in);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].word, "lit");
  EXPECT_EQ(recs[0].polysemy, 3);
  EXPECT_EQ(recs[0].freq_samples_p1, (std::vector<double>{5, 6, 7}));
  EXPECT_EQ(recs[0].tweet_count_p2, 180);
  EXPECT_DOUBLE_EQ(recs[0].pos_fractions.verb, 0.3);
  EXPECT_TRUE(recs[1].is_hybrid());
}

TEST(Records, CsvErrorsNameTheLine) {
  auto parse = [](const std::string& body) {
    std::istringstream in(std::string(kHeader) + body);
    return parse_records_csv(in);
  };
  EXPECT_EQ(code_of([&] { parse("a,slang,x,1,1,1,1,0,0,0,0\n"); }), Errc::NonNumericCount);
  EXPECT_EQ(code_of([&] { parse("a,bogus,1,1,1,1,1,0,0,0,0\n"); }), Errc::UnknownWordType);
  EXPECT_EQ(code_of([&] { parse("a,slang,1,1,1,1,1,1.5,0,0,0\n"); }), Errc::InvalidFraction);
  EXPECT_EQ(code_of([&] { parse("a,slang,1,-3,1,1,1,0,0,0,0\n"); }), Errc::NonNumericCount);
  EXPECT_NE(message_of([&] { parse("a,slang,1,1,1,1,1,0,0,0,0\nb,slang,1,1,1,1;q,1,0,0,0,0\n"); }).find("line 3"),
            std::string::npos);
  std::istringstream missing("word,type\nx,slang\n");
  EXPECT_EQ(code_of([&] { parse_records_csv(missing); }), Errc::MissingColumn);
}

TEST(Records, ParsesJsonAndReportsRecordIndex) {
  std::istringstream in(R"([{"word":"yeet","type":"slang","polysemy":2,"tweets_p1":160,"tweets_p2":170,
    "freq_samples_p1":[1,2],"freq_samples_p2":[3],"pos_fractions":{"verb":0.8,"noun":0.2}}])");
  const auto recs = parse_records_json(in);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_DOUBLE_EQ(recs[0].pos_fractions.verb, 0.8);
  EXPECT_DOUBLE_EQ(recs[0].pos_fractions.adverb, 0.0);
  std::istringstream bad(R"([{"word":"a","type":"slang","polysemy":1,"tweets_p1":1,"tweets_p2":1,
    "freq_samples_p1":[1],"freq_samples_p2":[1],"pos_fractions":{}},{"word":"b"}])");
  const auto msg = message_of([&] { parse_records_json(bad); });
  EXPECT_NE(msg.find("record 1"), std::string::npos);
}

TEST(Records, CsvRoundTrip) {
  std::istringstream in(std::string(kHeader) + "\"a,b\",nonslang,4,10,20,1;2,3;4,0.25,0.5,0,0.25\n");
  const auto recs = parse_records_csv(in);
  std::ostringstream out;
  write_records_csv(out, recs);
  std::istringstream again(out.str());
  const auto back = parse_records_csv(again);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].word, "a,b");
  EXPECT_EQ(back[0].freq_samples_p2, recs[0].freq_samples_p2);
  EXPECT_EQ(back[0].polysemy, 4);
}

TEST(CategorizationScheme, ParsesAndCategorizes) {
  const auto s = CategorizationScheme::parse("1|2-3|4+");
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.category(1), 0u);
  EXPECT_EQ(s.category(3), 1u);
  EXPECT_EQ(s.category(40), 2u);
  EXPECT_EQ(s.to_string(), "1|2-3|4+");
  EXPECT_EQ(code_of([] { CategorizationScheme::parse("2|3+"); }), Errc::InvalidScheme);
  EXPECT_EQ(code_of([] { CategorizationScheme::parse("1|3+"); }), Errc::InvalidScheme);
  EXPECT_EQ(code_of([] { CategorizationScheme::parse("1|2"); }), Errc::InvalidScheme);
  EXPECT_EQ(code_of([] { CategorizationScheme::parse("1|2+|3+"); }), Errc::InvalidScheme);
}

TEST(CategorizationScheme, DefaultsAreNineValidSchemes) {
  const auto schemes = default_polysemy_schemes();
  ASSERT_EQ(schemes.size(), 9u);
  for (const auto& s : schemes) {
    EXPECT_GE(s.size(), 2u);
    EXPECT_LE(s.size(), 5u);
    EXPECT_EQ(CategorizationScheme::parse(s.to_string()), s);
    // Categories are monotone in the sense count.
    for (int p = 1; p < 15; ++p) EXPECT_LE(s.category(p), s.category(p + 1));
  }
}

TEST(BuildTable, SkipsHybridsAndLogsFrequency) {
  std::vector<WordRecord> recs(3);
  recs[0].word = "b";
  recs[0].word_type = WordType::nonslang;
  recs[0].polysemy = 5;
  recs[0].pos_fractions = {0.5, 0.01, 0, 0};
  recs[1].word = "a";
  recs[2].word = "h";
  recs[2].word_type = WordType::hybrid;
  std::map<std::string, DerivedValues> d = {{"a", {std::exp(2.0), 0.5, 0.25}}, {"b", {1.0, -0.5, 1.0}}};
  const auto t = build_table(recs, d, CategorizationScheme::parse("1|2-3|4+"));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].word, "a");
  EXPECT_DOUBLE_EQ(t.rows[0].log_frequency, 2.0);
  EXPECT_TRUE(t.rows[1].nonslang);
  EXPECT_EQ(t.rows[1].polysemy_category, 2u);
  EXPECT_TRUE(t.rows[1].pos.noun);
  EXPECT_FALSE(t.rows[1].pos.verb);

  const auto ds = to_dataset(t);
  EXPECT_EQ(ds.n_cols(), 9u);
  EXPECT_EQ(ds.kinds[ds.index_of("polysemy")], VariableKind::categorical);
  EXPECT_EQ(ds.kinds[ds.index_of("semantic_change")], VariableKind::continuous);
  EXPECT_EQ(ds.columns[ds.index_of("type")], (std::vector<double>{0, 1}));
}

TEST(BuildTable, MissingValuesRaiseOrDrop) {
  std::vector<WordRecord> recs(2);
  recs[0].word = "a";
  recs[1].word = "b";
  std::map<std::string, DerivedValues> d = {{"a", {2.0, 0.1, std::nullopt}}, {"b", {2.0, 0.1, 0.3}}};
  const auto scheme = CategorizationScheme::parse("1|2+");
  EXPECT_EQ(code_of([&] { build_table(recs, d, scheme); }), Errc::MissingDerivedValue);
  const auto t = build_table(recs, d, scheme, BuildTableOptions{0.05, true});
  ASSERT_EQ(t.rows.size(), 1u);
  ASSERT_EQ(t.dropped.size(), 1u);
  EXPECT_EQ(t.dropped[0].first, "a");
}

TEST(Dataset, ReorderKeepsColumnsIntact) {
  Dataset d;
  d.add_column("x", VariableKind::continuous, {1, 2});
  d.add_column("y", VariableKind::categorical, {0, 1});
  const auto r = d.reordered({1, 0});
  EXPECT_EQ(r.names, (std::vector<std::string>{"y", "x"}));
  EXPECT_EQ(r.columns[1], d.columns[0]);
  EXPECT_EQ(code_of([&] { d.add_column("z", VariableKind::continuous, {1}); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([&] { d.index_of("q"); }), Errc::UnknownNode);
}
