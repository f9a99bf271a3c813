#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lexcausal {

double normal_cdf(double x);
double normal_quantile(double p);
/// Upper tail P(X > x) for X ~ chi-squared(df).
double chi2_sf(double x, double df);
/// Two-sided p-value of a t statistic with df degrees of freedom.
double student_t_two_sided(double t, double df);

enum class PermutationMode { sampled, exact };

inline constexpr std::size_t kDefaultPermutations = 10000;
inline constexpr double kExactEnumerationLimit = 1e6;

struct PermutationOptions {
  std::size_t n_perm = kDefaultPermutations;
  PermutationMode mode = PermutationMode::sampled;
  std::uint64_t seed = 0;
};

/// Two-sided label-shuffling test of |mean(a) - mean(b)|. Exact mode
/// enumerates every split (at most 1e6 of them); sampled mode returns
/// (count + 1) / (n_perm + 1).
double permutation_test(std::span<const double> a, std::span<const double> b, const PermutationOptions& options = {});

/// Number of ways to choose k of n, as a double (may be inexact when huge).
double binomial_coefficient(std::size_t n, std::size_t k);

struct TTestResult {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
};

/// Welch's unequal-variance t-test, statistic mean(a) - mean(b) over its SE.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

struct CorrelationResult {
  double r = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

CorrelationResult pearson(std::span<const double> x, std::span<const double> y);
/// Pearson correlation of average ranks.
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);
/// 1-based ranks, ties share their average rank.
std::vector<double> average_ranks(std::span<const double> values);

struct QQPoint {
  double theoretical = 0.0;
  double sample = 0.0;
};

/// Sorted sample against quantiles of the normal fitted by mean/sd, at
/// plotting positions (i + 0.5) / n.
std::vector<QQPoint> qq_points(std::span<const double> values);

}  // namespace lexcausal
