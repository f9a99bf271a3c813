#include <gtest/gtest.h>

#include <cmath>

#include "error_helpers.hpp"
#include "lexcausal/frequency.hpp"

using namespace lexcausal;
using lexcausal::testing::code_of;

namespace {

WordRecord record(std::string word, std::vector<double> p1, std::vector<double> p2) {
  WordRecord r;
  r.word = std::move(word);
  r.freq_samples_p1 = std::move(p1);
  r.freq_samples_p2 = std::move(p2);
  return r;
}

}  // namespace

TEST(Frequency, MeansAndShift) {
  EXPECT_DOUBLE_EQ(mean_frequency(std::vector<double>{2, 4, 9}), 5.0);
  EXPECT_EQ(code_of([] { mean_frequency(std::vector<double>{}); }), Errc::EmptySamples);
  EXPECT_DOUBLE_EQ(freq_shift(2.0, 2.0 * std::exp(0.7)), 0.7);
  EXPECT_EQ(code_of([] { freq_shift(0.0, 1.0); }), Errc::NonPositiveFrequency);
}

TEST(Frequency, ShiftIsAntisymmetricAndAdditive) {
  for (double a : {0.5, 3.0, 100.0})
    for (double b : {0.2, 7.0}) {
      EXPECT_NEAR(freq_shift(a, b), -freq_shift(b, a), 1e-15);
      EXPECT_NEAR(freq_shift(a, b) + freq_shift(b, 11.0), freq_shift(a, 11.0), 1e-14);
    }
}

TEST(Frequency, RescaleFactorIsRatioOfGrandMeans) {
  const std::vector<double> p1 = {1, 2, 3};
  const std::vector<double> p2 = {4, 4, 10};
  EXPECT_DOUBLE_EQ(compute_rescale_factor(p1, p2), 3.0);
  EXPECT_EQ(code_of([] { compute_rescale_factor(std::vector<double>{0, 0}, std::vector<double>{1}); }),
            Errc::ZeroGrandMean);
}

TEST(Frequency, AnalyzeRescalesPeriodTwo) {
  const std::vector<WordRecord> recs = {record("a", {1, 3}, {4, 8}), record("b", {4}, {12}),
                                        record("c", {}, {1}), record("d", {2}, {0})};
  const auto fa = analyze_frequencies(recs);
  // Grand means over a, b, d: p1 (2+4+2)/3, p2 (6+12+0)/3.
  EXPECT_DOUBLE_EQ(fa.rescale_factor, 18.0 / 8.0);
  ASSERT_EQ(fa.profiles.size(), 3u);
  const auto& a = fa.profiles[0];
  EXPECT_EQ(a.word, "a");
  EXPECT_DOUBLE_EQ(a.mean_p2, 6.0 / fa.rescale_factor);
  EXPECT_DOUBLE_EQ(a.freq, 0.5 * (2.0 + a.mean_p2));
  EXPECT_NEAR(*a.freq_shift, std::log(a.mean_p2 / 2.0), 1e-15);
  EXPECT_EQ(*a.abs_shift, std::abs(*a.freq_shift));
  EXPECT_FALSE(fa.profiles[2].freq_shift.has_value());
  ASSERT_EQ(fa.excluded.size(), 2u);
  EXPECT_EQ(fa.excluded[0].first, "c");
  EXPECT_EQ(fa.excluded[1].first, "d");
}

TEST(Frequency, RescaledShiftsAreCentredOnUniformGrowth) {
  // Every word grows by the same factor, so each rescaled shift is 0.
  std::vector<WordRecord> recs;
  for (int i = 1; i <= 5; ++i) recs.push_back(record("w" + std::to_string(i), {double(i)}, {2.5 * i}));
  for (const auto& p : analyze_frequencies(recs).profiles) EXPECT_NEAR(*p.freq_shift, 0.0, 1e-15);
}

TEST(Frequency, OverrideAndErrors) {
  const std::vector<WordRecord> recs = {record("a", {1}, {2})};
  const auto fa = analyze_frequencies(recs, 4.0);
  EXPECT_TRUE(fa.rescale_overridden);
  EXPECT_DOUBLE_EQ(fa.profiles[0].mean_p2, 0.5);
  EXPECT_EQ(code_of([&] { analyze_frequencies(recs, -1.0); }), Errc::ConfigError);
  EXPECT_EQ(code_of([] { analyze_frequencies({record("a", {}, {})}); }), Errc::EmptySamples);
}

TEST(Summary, SampleStatistics) {
  const auto s = summarize(std::vector<double>{2, 4, 4, 4, 5, 5, 7, 9});
  EXPECT_EQ(s.n, 8u);
  EXPECT_DOUBLE_EQ(s.mean, 5.0);
  EXPECT_NEAR(s.sd, std::sqrt(32.0 / 7.0), 1e-14);
  EXPECT_NEAR(s.se, s.sd / std::sqrt(8.0), 1e-15);
  EXPECT_EQ(summarize(std::vector<double>{}).n, 0u);
}

TEST(Histogram, MatchesReferenceCounts) {
  const std::vector<double> v = {0.1, 0.5, 0.5, 0.9, 1.0, 0.0, 0.25, 1.5, -0.1};
  const auto h = histogram(v, 0.0, 1.0, 4);
  ASSERT_EQ(h.size(), 4u);
  // numpy.histogram over the in-range values.
  std::vector<std::size_t> counts;
  for (const auto& b : h) counts.push_back(b.count);
  EXPECT_EQ(counts, (std::vector<std::size_t>{2, 1, 2, 2}));
  EXPECT_EQ(h.front().lo, 0.0);
  EXPECT_EQ(h.back().hi, 1.0);
  EXPECT_EQ(code_of([&] { histogram(v, 1.0, 1.0, 3); }), Errc::InvalidArgument);
}
