#include "lexcausal/ci_tests.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include <Eigen/Dense>

#include "lexcausal/error.hpp"
#include "lexcausal/stats.hpp"

namespace lexcausal {

CITestResult fisher_z_from_correlation(double r, std::size_t n, std::size_t k) {
  if (n <= k + 3)
    throw Error(Errc::TooFewSamples, "Fisher-z needs n > |Z| + 3 (n=" + std::to_string(n) +
                                         ", |Z|=" + std::to_string(k) + ")");
  r = std::clamp(r, -kMaxAbsCorrelation, kMaxAbsCorrelation);
  const double z = 0.5 * std::log((1.0 + r) / (1.0 - r));
  const double stat = std::sqrt(static_cast<double>(n - k - 3)) * std::abs(z);
  CITestResult out;
  out.statistic = stat;
  out.df_or_n = static_cast<double>(n);
  out.p_value = std::clamp(2.0 * (1.0 - normal_cdf(stat)), 0.0, 1.0);
  return out;
}

double partial_correlation(std::span<const double> x, std::span<const double> y,
                           const std::vector<std::span<const double>>& z) {
  const auto n = static_cast<Eigen::Index>(x.size());
  if (y.size() != x.size()) throw Error(Errc::DimMismatch, "partial correlation: x and y differ in length");
  for (const auto& c : z)
    if (c.size() != x.size()) throw Error(Errc::DimMismatch, "partial correlation: conditioning column length");

  Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
  Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  Eigen::VectorXd rx = xv.array() - xv.mean();
  Eigen::VectorXd ry = yv.array() - yv.mean();
  const double sx = rx.squaredNorm();
  const double sy = ry.squaredNorm();
  if (!(sx > 0.0) || !(sy > 0.0)) throw Error(Errc::SingularCovariance, "partial correlation of a constant column");

  if (!z.empty()) {
    Eigen::MatrixXd design(n, static_cast<Eigen::Index>(z.size()));
    for (std::size_t j = 0; j < z.size(); ++j) {
      Eigen::Map<const Eigen::VectorXd> col(z[j].data(), n);
      design.col(static_cast<Eigen::Index>(j)) = col.array() - col.mean();
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-12);
    rx -= design * qr.solve(rx);
    ry -= design * qr.solve(ry);
    if (rx.squaredNorm() <= 1e-24 * sx || ry.squaredNorm() <= 1e-24 * sy)
      throw Error(Errc::SingularCovariance, "variable is a linear function of the conditioning set");
  }
  const double r = rx.dot(ry) / std::sqrt(rx.squaredNorm() * ry.squaredNorm());
  return std::clamp(r, -1.0, 1.0);
}

CITestResult fisher_z_ci_test(std::span<const double> x, std::span<const double> y,
                              const std::vector<std::span<const double>>& z) {
  if (x.size() <= z.size() + 3)
    throw Error(Errc::TooFewSamples, "Fisher-z needs n > |Z| + 3");
  return fisher_z_from_correlation(partial_correlation(x, y, z), x.size(), z.size());
}

DiscreteColumn discretize_categorical(std::span<const double> values) {
  std::vector<double> levels(values.begin(), values.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  DiscreteColumn out;
  out.levels = static_cast<int>(levels.size());
  out.codes.reserve(values.size());
  for (double v : values)
    out.codes.push_back(static_cast<int>(std::lower_bound(levels.begin(), levels.end(), v) - levels.begin()));
  return out;
}

DiscreteColumn discretize_quantile(std::span<const double> values, int bins) {
  if (bins < 1) throw Error(Errc::InvalidArgument, "quantile discretization needs bins >= 1");
  if (values.empty()) return {};
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = sorted.size();
  std::vector<double> cuts;
  for (int b = 1; b < bins; ++b) {
    const auto pos = static_cast<std::size_t>(std::ceil(static_cast<double>(b) * static_cast<double>(n) / bins));
    cuts.push_back(sorted[std::max<std::size_t>(pos, 1) - 1]);
  }
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> raw(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    raw[i] = static_cast<double>(std::lower_bound(cuts.begin(), cuts.end(), values[i]) - cuts.begin());
  return discretize_categorical(raw);
}

CITestResult chi2_mi_ci_test(const DiscreteColumn& x, const DiscreteColumn& y,
                             const std::vector<const DiscreteColumn*>& z) {
  const std::size_t n = x.codes.size();
  if (y.codes.size() != n) throw Error(Errc::DimMismatch, "chi2 MI test: x and y differ in length");
  for (const auto* c : z)
    if (c->codes.size() != n) throw Error(Errc::DimMismatch, "chi2 MI test: conditioning column length");
  if (x.levels < 2 || y.levels < 2)
    throw Error(Errc::DegenerateMargins, "chi2 MI test on a variable with a single observed level");

  double strata = 1.0;
  for (const auto* c : z) strata *= std::max(1, c->levels);
  const std::size_t lx = static_cast<std::size_t>(x.levels);
  const std::size_t ly = static_cast<std::size_t>(y.levels);
  const double df = static_cast<double>(lx - 1) * static_cast<double>(ly - 1) * strata;

  // Stratum id of every row, compacted to the observed strata.
  std::vector<std::size_t> stratum(n, 0);
  std::size_t n_strata = 1;
  if (!z.empty()) {
    std::unordered_map<std::uint64_t, std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t key = 0;
      for (const auto* c : z) key = key * static_cast<std::uint64_t>(std::max(1, c->levels)) + c->codes[i];
      auto [it, inserted] = ids.try_emplace(key, ids.size());
      stratum[i] = it->second;
    }
    n_strata = ids.size();
  }

  std::vector<double> nxyz(n_strata * lx * ly, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    nxyz[(stratum[i] * lx + static_cast<std::size_t>(x.codes[i])) * ly + static_cast<std::size_t>(y.codes[i])] += 1.0;

  double g = 0.0;
  std::vector<double> nxz(lx), nyz(ly);
  for (std::size_t s = 0; s < n_strata; ++s) {
    std::fill(nxz.begin(), nxz.end(), 0.0);
    std::fill(nyz.begin(), nyz.end(), 0.0);
    double nz = 0.0;
    const double* cell = &nxyz[s * lx * ly];
    for (std::size_t a = 0; a < lx; ++a)
      for (std::size_t b = 0; b < ly; ++b) {
        nxz[a] += cell[a * ly + b];
        nyz[b] += cell[a * ly + b];
        nz += cell[a * ly + b];
      }
    for (std::size_t a = 0; a < lx; ++a)
      for (std::size_t b = 0; b < ly; ++b) {
        const double c = cell[a * ly + b];
        if (c > 0.0) g += c * std::log(c * nz / (nxz[a] * nyz[b]));
      }
  }
  CITestResult out;
  out.statistic = std::max(0.0, 2.0 * g);
  out.df_or_n = df;
  out.p_value = chi2_sf(out.statistic, df);
  return out;
}

namespace {

DiscreteColumn discretize(const ColumnView& c, int bins) {
  return c.kind == VariableKind::categorical ? discretize_categorical(c.values) : discretize_quantile(c.values, bins);
}

}  // namespace

CITestResult chi2_mi_ci_test(const ColumnView& x, const ColumnView& y, const std::vector<ColumnView>& z, int bins) {
  const auto dx = discretize(x, bins);
  const auto dy = discretize(y, bins);
  std::vector<DiscreteColumn> dz;
  dz.reserve(z.size());
  for (const auto& c : z) dz.push_back(discretize(c, bins));
  std::vector<const DiscreteColumn*> ptrs;
  for (const auto& c : dz) ptrs.push_back(&c);
  return chi2_mi_ci_test(dx, dy, ptrs);
}

MixedCITest::MixedCITest(Dataset data, int bins) : data_(std::move(data)), bins_(bins) {
  discrete_.reserve(data_.n_cols());
  for (std::size_t i = 0; i < data_.n_cols(); ++i)
    discrete_.push_back(discretize(ColumnView{data_.columns[i], data_.kinds[i]}, bins_));
}

CITestResult MixedCITest::test(std::size_t x, std::size_t y, std::span<const std::size_t> z) const {
  bool all_continuous = data_.kinds[x] == VariableKind::continuous && data_.kinds[y] == VariableKind::continuous;
  for (auto c : z) all_continuous = all_continuous && data_.kinds[c] == VariableKind::continuous;

  if (discrete_[x].levels < 2 || discrete_[y].levels < 2) return CITestResult{0.0, 0.0, 1.0};
  if (all_continuous) {
    std::vector<std::span<const double>> cond;
    for (auto c : z) cond.emplace_back(data_.columns[c]);
    return fisher_z_ci_test(data_.columns[x], data_.columns[y], cond);
  }
  std::vector<const DiscreteColumn*> cond;
  for (auto c : z) cond.push_back(&discrete_[c]);
  return chi2_mi_ci_test(discrete_[x], discrete_[y], cond);
}

}  // namespace lexcausal
