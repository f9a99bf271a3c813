#include "lexcausal/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lexcausal/error.hpp"

namespace lexcausal {

double mean_frequency(std::span<const double> samples) {
  if (samples.empty()) throw Error(Errc::EmptySamples, "no frequency samples");
  return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

double compute_rescale_factor(std::span<const double> p1_means, std::span<const double> p2_raw_means) {
  if (p1_means.empty() || p2_raw_means.empty()) throw Error(Errc::ZeroGrandMean, "empty frequency pool");
  const double g1 = mean_frequency(p1_means);
  const double g2 = mean_frequency(p2_raw_means);
  if (!(g1 > 0.0) || !(g2 > 0.0)) throw Error(Errc::ZeroGrandMean, "grand mean frequency must be positive");
  return g2 / g1;
}

double freq_shift(double x_p1, double x_p2) {
  if (!(x_p1 > 0.0) || !(x_p2 > 0.0))
    throw Error(Errc::NonPositiveFrequency, "frequency shift needs positive frequencies in both periods");
  return std::log(x_p2) - std::log(x_p1);
}

FrequencyAnalysis analyze_frequencies(const std::vector<WordRecord>& records, std::optional<double> rescale_override) {
  FrequencyAnalysis out;
  std::vector<double> p1, p2;
  std::vector<const WordRecord*> usable;
  for (const auto& r : records) {
    if (r.freq_samples_p1.empty() || r.freq_samples_p2.empty()) {
      out.excluded.emplace_back(r.word, "missing frequency samples");
      continue;
    }
    usable.push_back(&r);
    p1.push_back(mean_frequency(r.freq_samples_p1));
    p2.push_back(mean_frequency(r.freq_samples_p2));
  }
  if (usable.empty()) throw Error(Errc::EmptySamples, "no records carry frequency samples");

  if (rescale_override) {
    if (!(*rescale_override > 0.0)) throw Error(Errc::ConfigError, "rescale factor override must be positive");
    out.rescale_factor = *rescale_override;
    out.rescale_overridden = true;
  } else {
    out.rescale_factor = compute_rescale_factor(p1, p2);
  }

  for (std::size_t i = 0; i < usable.size(); ++i) {
    FrequencyProfile prof;
    prof.word = usable[i]->word;
    prof.word_type = usable[i]->word_type;
    prof.mean_p1 = p1[i];
    prof.mean_p2_raw = p2[i];
    prof.rescale_factor = out.rescale_factor;
    prof.mean_p2 = p2[i] / out.rescale_factor;
    prof.freq = 0.5 * (prof.mean_p1 + prof.mean_p2);
    if (prof.mean_p1 > 0.0 && prof.mean_p2 > 0.0) {
      prof.freq_shift = freq_shift(prof.mean_p1, prof.mean_p2);
      prof.abs_shift = std::abs(*prof.freq_shift);
    } else {
      out.excluded.emplace_back(prof.word, "zero frequency in a period; shift undefined");
    }
    out.profiles.push_back(std::move(prof));
  }
  return out;
}

GroupSummary summarize(std::span<const double> values) {
  GroupSummary s;
  s.n = values.size();
  if (s.n == 0) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    s.se = s.sd / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

std::vector<HistogramBin> histogram(std::span<const double> values, double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) throw Error(Errc::InvalidArgument, "histogram needs bins > 0 and hi > lo");
  std::vector<HistogramBin> out(bins);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lo = lo + width * static_cast<double>(b);
    out[b].hi = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (double v : values) {
    if (v < lo || v > hi) continue;
    auto b = static_cast<std::size_t>((v - lo) / width);
    ++out[std::min(b, bins - 1)].count;
  }
  return out;
}

}  // namespace lexcausal
