#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lexcausal/data_model.hpp"

namespace lexcausal {

/// Arithmetic mean of daily tweet counts; EmptySamples when empty.
double mean_frequency(std::span<const double> samples);

/// grand-mean(p2 raw) / grand-mean(p1). ZeroGrandMean if either is not positive.
double compute_rescale_factor(std::span<const double> p1_means, std::span<const double> p2_raw_means);

/// ln(x_p2 / x_p1). NonPositiveFrequency unless both are > 0.
double freq_shift(double x_p1, double x_p2);

struct FrequencyProfile {
  std::string word;
  WordType word_type = WordType::slang;
  double mean_p1 = 0.0;
  double mean_p2_raw = 0.0;
  double rescale_factor = 1.0;
  double mean_p2 = 0.0;  // mean_p2_raw / rescale_factor
  double freq = 0.0;     // average of mean_p1 and mean_p2
  std::optional<double> freq_shift;  // absent when either period mean is 0
  std::optional<double> abs_shift;
};

struct FrequencyAnalysis {
  double rescale_factor = 1.0;
  bool rescale_overridden = false;
  std::vector<FrequencyProfile> profiles;  // input order
  /// (word, reason) for words without samples or without a defined shift.
  std::vector<std::pair<std::string, std::string>> excluded;
};

/// Profiles every record (hybrids included). The rescale factor is computed
/// from the records unless `rescale_override` is given.
FrequencyAnalysis analyze_frequencies(const std::vector<WordRecord>& records,
                                      std::optional<double> rescale_override = std::nullopt);

struct GroupSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n - 1)
  double se = 0.0;  // sd / sqrt(n)
};

GroupSummary summarize(std::span<const double> values);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};

/// Equal-width bins over [lo, hi]; the last bin is closed on the right and
/// values outside the range are ignored.
std::vector<HistogramBin> histogram(std::span<const double> values, double lo, double hi, std::size_t bins);

}  // namespace lexcausal
