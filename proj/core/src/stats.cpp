#include "lexcausal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "lexcausal/error.hpp"
#include "lexcausal/random.hpp"

namespace lexcausal {

double normal_cdf(double x) { return boost::math::cdf(boost::math::normal_distribution<double>(), x); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(Errc::InvalidArgument, "normal quantile needs p in (0,1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double chi2_sf(double x, double df) {
  if (!(df > 0.0)) throw Error(Errc::InvalidArgument, "chi-squared needs df > 0");
  if (x <= 0.0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(df), x));
}

double student_t_two_sided(double t, double df) {
  if (!(df > 0.0)) throw Error(Errc::InvalidArgument, "t distribution needs df > 0");
  if (!std::isfinite(t)) return 0.0;
  const double tail =
      boost::math::cdf(boost::math::complement(boost::math::students_t_distribution<double>(df), std::abs(t)));
  return std::min(1.0, 2.0 * tail);
}

double binomial_coefficient(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

double permutation_test(std::span<const double> a, std::span<const double> b, const PermutationOptions& options) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptyGroup, "permutation test needs two nonempty groups");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size();
  const std::size_t na = a.size();
  const double nad = static_cast<double>(na);
  const double nbd = static_cast<double>(b.size());
  const double total = std::accumulate(pooled.begin(), pooled.end(), 0.0);
  auto stat = [&](double sum_a) { return std::abs(sum_a / nad - (total - sum_a) / nbd); };

  const double observed = stat(std::accumulate(a.begin(), a.end(), 0.0));
  double scale = 0.0;
  for (double v : pooled) scale = std::max(scale, std::abs(v));
  const double threshold = observed - 1e-12 * std::max(1.0, scale);

  if (options.mode == PermutationMode::exact) {
    const double splits = binomial_coefficient(n, na);
    if (splits > kExactEnumerationLimit)
      throw Error(Errc::InvalidArgument, "exact permutation test would enumerate " + std::to_string(splits) +
                                             " splits (limit 1e6)");
    // Lexicographic enumeration of index combinations of size na.
    std::vector<std::size_t> idx(na);
    std::iota(idx.begin(), idx.end(), 0);
    std::size_t count = 0;
    std::size_t seen = 0;
    while (true) {
      double s = 0.0;
      for (auto i : idx) s += pooled[i];
      if (stat(s) >= threshold) ++count;
      ++seen;
      std::size_t pos = na;
      while (pos > 0 && idx[pos - 1] == n - na + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < na; ++j) idx[j] = idx[j - 1] + 1;
    }
    return static_cast<double>(count) / static_cast<double>(seen);
  }

  if (options.n_perm == 0) throw Error(Errc::InvalidArgument, "sampled permutation test needs n_perm > 0");
  Rng rng(options.seed);
  std::size_t count = 0;
  for (std::size_t p = 0; p < options.n_perm; ++p) {
    // Partial Fisher-Yates: the first na slots form a uniformly random subset.
    double s = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
      const std::size_t j = i + uniform_index(rng, n - i);
      std::swap(pooled[i], pooled[j]);
      s += pooled[i];
    }
    if (stat(s) >= threshold) ++count;
  }
  return static_cast<double>(count + 1) / static_cast<double>(options.n_perm + 1);
}

namespace {

struct Moments {
  double mean, var;
};

Moments moments(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, v.size() > 1 ? ss / (n - 1.0) : 0.0};
}

}  // namespace

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw Error(Errc::DegenerateVariance, "Welch test needs >= 2 values per group");
  const auto ma = moments(a);
  const auto mb = moments(b);
  if (!(ma.var > 0.0) || !(mb.var > 0.0))
    throw Error(Errc::DegenerateVariance, "Welch test needs positive variance in both groups");
  const double va = ma.var / static_cast<double>(a.size());
  const double vb = mb.var / static_cast<double>(b.size());
  TTestResult r;
  r.statistic = (ma.mean - mb.mean) / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) /
         (va * va / static_cast<double>(a.size() - 1) + vb * vb / static_cast<double>(b.size() - 1));
  r.p_value = student_t_two_sided(r.statistic, r.df);
  return r;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(Errc::DimMismatch, "pearson: x and y differ in length");
  if (x.size() < 3) throw Error(Errc::TooFewSamples, "pearson needs n >= 3");
  const auto mx = moments(x);
  const auto my = moments(y);
  if (!(mx.var > 0.0) || !(my.var > 0.0)) throw Error(Errc::ZeroVariance, "pearson on a constant column");
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx.mean) * (y[i] - my.mean);
  const double n = static_cast<double>(x.size());
  CorrelationResult out;
  out.n = x.size();
  out.r = std::clamp(sxy / (n - 1.0) / std::sqrt(mx.var * my.var), -1.0, 1.0);
  const double df = n - 2.0;
  if (std::abs(out.r) >= 1.0) {
    out.p_value = 0.0;
  } else {
    out.p_value = df > 0.0 ? student_t_two_sided(out.r * std::sqrt(df / (1.0 - out.r * out.r)), df) : 1.0;
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return values[i] < values[j]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(Errc::DimMismatch, "spearman: x and y differ in length");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

std::vector<QQPoint> qq_points(std::span<const double> values) {
  if (values.size() < 2) throw Error(Errc::TooFewSamples, "Q-Q points need n >= 2");
  const auto m = moments(values);
  if (!(m.var > 0.0)) throw Error(Errc::ZeroVariance, "Q-Q points of a constant sample");
  const double sd = std::sqrt(m.var);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<QQPoint> out(sorted.size());
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    out[i] = {m.mean + sd * normal_quantile((static_cast<double>(i) + 0.5) / n), sorted[i]};
  return out;
}

}  // namespace lexcausal
