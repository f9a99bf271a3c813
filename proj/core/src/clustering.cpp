#include "lexcausal/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "lexcausal/error.hpp"
#include "lexcausal/random.hpp"

namespace lexcausal {

namespace {

std::vector<int> nearest_centroid(const RowMatrix& data, const RowMatrix& centroids, Eigen::VectorXd& sq_dist) {
  const auto n = data.rows();
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  sq_dist.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      const double d = (data.row(i) - centroids.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        arg = static_cast<int>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = arg;
    sq_dist(i) = best;
  }
  return labels;
}

RowMatrix kmeanspp_seed(const RowMatrix& data, int k, Rng& rng) {
  const auto n = data.rows();
  RowMatrix centroids(k, data.cols());
  centroids.row(0) = data.row(static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::uint64_t>(n))));
  Eigen::VectorXd closest = (data.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = closest.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double target = uniform_unit(rng) * total;
      for (pick = 0; pick < n - 1; ++pick) {
        target -= closest(pick);
        if (target < 0.0) break;
      }
    } else {
      pick = static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    }
    centroids.row(c) = data.row(pick);
    closest = closest.cwiseMin((data.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

std::uint64_t labels_fingerprint(std::span<const int> labels, int k) {
  std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(k);
  for (int l : labels) {
    h ^= static_cast<std::uint64_t>(l) + 0x9E3779B97F4A7C15ULL;
    h *= 1099511628211ULL;
  }
  return h == 0 ? 1 : h;
}

int distinct_labels(std::span<const int> labels) {
  return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
}

std::vector<int> compact_labels(std::span<const int> labels, int& k_out) {
  std::vector<int> mapping;
  std::vector<int> out(labels.size());
  std::set<int> seen(labels.begin(), labels.end());
  mapping.assign(seen.empty() ? 0 : static_cast<std::size_t>(*seen.rbegin() + 1), -1);
  int next = 0;
  for (int l : seen) mapping[static_cast<std::size_t>(l)] = next++;
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = mapping[static_cast<std::size_t>(labels[i])];
  k_out = next;
  return out;
}

}  // namespace

KMeansResult kmeans(const RowMatrix& data, int k, std::uint64_t seed, int max_iter) {
  const auto n = data.rows();
  if (k < 1 || k > n) throw Error(Errc::InvalidArgument, "k-means needs 1 <= k <= n, got k=" + std::to_string(k));
  Rng rng(seed);
  KMeansResult result;
  result.centroids = kmeanspp_seed(data, k, rng);
  Eigen::VectorXd sq;
  result.labels = nearest_centroid(data, result.centroids, sq);

  for (int iter = 0; iter < max_iter; ++iter) {
    RowMatrix sums = RowMatrix::Zero(k, data.cols());
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int l = result.labels[static_cast<std::size_t>(i)];
      sums.row(l) += data.row(i);
      ++counts[static_cast<std::size_t>(l)];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        result.centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      } else {
        // Re-seed an empty cluster at the point worst served by its centroid.
        Eigen::Index far = 0;
        sq.maxCoeff(&far);
        result.centroids.row(c) = data.row(far);
        sq(far) = 0.0;
      }
    }
    auto labels = nearest_centroid(data, result.centroids, sq);
    const bool stable = labels == result.labels;
    result.labels = std::move(labels);
    if (stable) break;
  }
  result.inertia = sq.sum();
  return result;
}

Eigen::Index GmmFit::free_parameters() const {
  const Eigen::Index kk = weights.size();
  const Eigen::Index d = means.cols();
  const Eigen::Index cov = covariance_type == CovarianceType::full ? d * (d + 1) / 2 : d;
  return (kk - 1) + kk * d + kk * cov;
}

double GmmFit::bic(Eigen::Index n) const {
  return -2.0 * log_likelihood + static_cast<double>(free_parameters()) * std::log(static_cast<double>(n));
}

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112352797;

// Log densities for every (row, component), n x k.
Eigen::MatrixXd component_log_density(const RowMatrix& data, const GmmFit& g) {
  const auto n = data.rows();
  const auto d = data.cols();
  const int k = g.k();
  Eigen::MatrixXd out(n, k);
  for (int c = 0; c < k; ++c) {
    const Eigen::RowVectorXd mu = g.means.row(c);
    if (g.covariance_type == CovarianceType::full) {
      Eigen::LLT<Eigen::MatrixXd> llt(g.covariances[static_cast<std::size_t>(c)]);
      if (llt.info() != Eigen::Success) throw Error(Errc::SingularCovariance, "GMM covariance not positive definite");
      const Eigen::MatrixXd L = llt.matrixL();
      const double log_det = 2.0 * L.diagonal().array().log().sum();
      Eigen::MatrixXd centered = (data.rowwise() - mu).transpose();
      const Eigen::MatrixXd solved = llt.matrixL().solve(centered);
      const Eigen::VectorXd maha = solved.colwise().squaredNorm().transpose();
      out.col(c) = (-0.5 * (static_cast<double>(d) * kLog2Pi + log_det + maha.array())).matrix();
    } else {
      const Eigen::ArrayXd var = g.covariances[static_cast<std::size_t>(c)].col(0).array();
      const double log_det = var.log().sum();
      const Eigen::ArrayXXd centered = (data.rowwise() - mu).array();
      const Eigen::VectorXd maha = (centered.square().rowwise() / var.transpose()).rowwise().sum().matrix();
      out.col(c) = (-0.5 * (static_cast<double>(d) * kLog2Pi + log_det + maha.array())).matrix();
    }
  }
  return out;
}

void m_step(const RowMatrix& data, const Eigen::MatrixXd& resp, GmmFit& g, double reg) {
  const auto n = data.rows();
  const auto d = data.cols();
  const int k = g.k();
  const Eigen::VectorXd nk = resp.colwise().sum().transpose().array() + 10 * std::numeric_limits<double>::epsilon();
  g.weights = nk / static_cast<double>(n);
  g.means = (resp.transpose() * data).array().colwise() / nk.array();
  for (int c = 0; c < k; ++c) {
    const Eigen::MatrixXd centered = data.rowwise() - g.means.row(c);
    if (g.covariance_type == CovarianceType::full) {
      Eigen::MatrixXd cov = (centered.array().colwise() * resp.col(c).array()).matrix().transpose() * centered / nk(c);
      cov.diagonal().array() += reg;
      g.covariances[static_cast<std::size_t>(c)] = cov;
    } else {
      Eigen::MatrixXd var(d, 1);
      var.col(0) = ((centered.array().square().colwise() * resp.col(c).array()).colwise().sum().transpose() / nk(c)).matrix();
      var.array() += reg;
      g.covariances[static_cast<std::size_t>(c)] = var;
    }
  }
}

// Returns the log-likelihood, filling `resp` with normalized responsibilities.
double e_step(const RowMatrix& data, const GmmFit& g, Eigen::MatrixXd& resp) {
  Eigen::MatrixXd logp = component_log_density(data, g);
  logp.rowwise() += g.weights.array().log().matrix().transpose();
  const Eigen::VectorXd row_max = logp.rowwise().maxCoeff();
  const Eigen::VectorXd lse =
      row_max.array() + (logp.colwise() - row_max).array().exp().rowwise().sum().log();
  resp = (logp.colwise() - lse).array().exp().matrix();
  return lse.sum();
}

GmmFit fit_gmm_once(const RowMatrix& data, int k, std::uint64_t seed, const GmmOptions& options) {
  const auto n = data.rows();
  GmmFit g;
  g.covariance_type =
      data.cols() <= options.full_covariance_max_dim ? CovarianceType::full : CovarianceType::diagonal;
  g.weights = Eigen::VectorXd::Constant(k, 1.0 / k);
  g.covariances.resize(static_cast<std::size_t>(k));

  const auto init = kmeans(data, k, seed);
  Eigen::MatrixXd resp = Eigen::MatrixXd::Zero(n, k);
  for (Eigen::Index i = 0; i < n; ++i) resp(i, init.labels[static_cast<std::size_t>(i)]) = 1.0;
  g.means = init.centroids;
  m_step(data, resp, g, options.reg_covar);

  double prev = -std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < options.max_iter; ++iter) {
    const double ll = e_step(data, g, resp);
    g.log_likelihood = ll;
    if (std::abs(ll - prev) / static_cast<double>(n) < options.tol) {
      g.converged = true;
      break;
    }
    prev = ll;
    m_step(data, resp, g, options.reg_covar);
  }
  g.log_likelihood = e_step(data, g, resp);
  g.labels.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index arg = 0;
    resp.row(i).maxCoeff(&arg);
    g.labels[static_cast<std::size_t>(i)] = static_cast<int>(arg);
  }
  return g;
}

}  // namespace

GmmFit fit_gmm(const RowMatrix& data, int k, std::uint64_t seed, const GmmOptions& options) {
  if (k < 1 || k > data.rows()) throw Error(Errc::InvalidArgument, "GMM needs 1 <= k <= n");
  GmmFit best;
  bool have = false;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    auto fit = fit_gmm_once(data, k, derive_seed(seed, static_cast<std::uint64_t>(r)), options);
    if (!have || fit.log_likelihood > best.log_likelihood) {
      best = std::move(fit);
      have = true;
    }
  }
  return best;
}

Eigen::MatrixXd pairwise_distances(const RowMatrix& data) {
  const auto n = data.rows();
  Eigen::MatrixXd dist(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) dist(i, j) = dist(j, i) = (data.row(i) - data.row(j)).norm();
  }
  return dist;
}

double silhouette_score(const Eigen::MatrixXd& distances, std::span<const int> labels) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (distances.rows() != n) throw Error(Errc::DimMismatch, "silhouette: label count differs from distance matrix");
  int k = 0;
  const auto compact = compact_labels(labels, k);
  if (k < 2) return 0.0;
  std::vector<double> sizes(static_cast<std::size_t>(k), 0.0);
  for (int l : compact) sizes[static_cast<std::size_t>(l)] += 1.0;

  double total = 0.0;
  std::vector<double> sums(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < n; ++i) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (Eigen::Index j = 0; j < n; ++j) sums[static_cast<std::size_t>(compact[static_cast<std::size_t>(j)])] += distances(i, j);
    const auto own = static_cast<std::size_t>(compact[static_cast<std::size_t>(i)]);
    if (sizes[own] <= 1.0) continue;
    const double a = sums[own] / (sizes[own] - 1.0);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < sums.size(); ++c)
      if (c != own) b = std::min(b, sums[c] / sizes[c]);
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

std::size_t elbow_index(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(Errc::DimMismatch, "elbow: x and y differ in length");
  if (x.size() < 3) return 0;
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  const double xr = x.back() - x.front();
  const double yr = *ymax - *ymin;
  if (xr <= 0.0 || yr <= 0.0) return 0;
  std::size_t best = 0;
  double best_gap = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xn = (x[i] - x.front()) / xr;
    const double yn = (y[i] - *ymin) / yr;
    const double gap = (1.0 - xn) - yn;  // distance below the chord y = 1 - x, up to a constant
    if (gap > best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return best;
}

SenseDistribution SenseDistribution::from_weights(std::vector<double> weights) {
  SenseDistribution d;
  d.weights = std::move(weights);
  return d;
}

std::string_view to_string(ClusterMethod m) noexcept { return m == ClusterMethod::kmeans ? "kmeans" : "gmm"; }

std::string_view to_string(KSelector s) noexcept {
  switch (s) {
    case KSelector::silhouette: return "silhouette";
    case KSelector::elbow: return "elbow";
    case KSelector::bic: return "bic";
  }
  return "silhouette";
}

ClusterMethod parse_cluster_method(std::string_view text) {
  if (text == "kmeans") return ClusterMethod::kmeans;
  if (text == "gmm") return ClusterMethod::gmm;
  throw Error(Errc::ConfigError, "unknown cluster method '" + std::string(text) + "'");
}

KSelector parse_k_selector(std::string_view text) {
  if (text == "silhouette") return KSelector::silhouette;
  if (text == "elbow") return KSelector::elbow;
  if (text == "bic") return KSelector::bic;
  throw Error(Errc::ConfigError, "unknown K selector '" + std::string(text) + "'");
}

namespace {

std::vector<int> fit_labels(const RowMatrix& data, int k, std::uint64_t seed, const ClusterOptions& options) {
  if (options.method == ClusterMethod::kmeans) return kmeans(data, k, seed).labels;
  GmmOptions single = options.gmm;
  single.restarts = 1;
  return fit_gmm(data, k, seed, single).labels;
}

struct Candidate {
  double silhouette = -std::numeric_limits<double>::infinity();
  std::vector<int> labels;
  bool valid = false;
};

Candidate best_silhouette_for_k(const RowMatrix& data, const Eigen::MatrixXd& dist, int k,
                                const ClusterOptions& options) {
  Candidate best;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    const auto seed = derive_seed(options.seed, static_cast<std::uint64_t>(k) * 1000 + static_cast<std::uint64_t>(r));
    auto labels = fit_labels(data, k, seed, options);
    if (distinct_labels(labels) < 2) continue;
    const double s = silhouette_score(dist, labels);
    if (!best.valid || s > best.silhouette) {
      best.silhouette = s;
      best.labels = std::move(labels);
      best.valid = true;
    }
  }
  return best;
}

SenseDistribution period_distribution(std::span<const int> labels, int k, std::uint64_t id) {
  SenseDistribution d;
  d.weights.assign(static_cast<std::size_t>(k), 0.0);
  d.assignments.assign(labels.begin(), labels.end());
  for (int l : labels) d.weights[static_cast<std::size_t>(l)] += 1.0;
  for (auto& w : d.weights) w /= static_cast<double>(labels.size());
  d.clustering_id = id;
  return d;
}

}  // namespace

SenseClustering cluster_senses(const RowMatrix& period1, const RowMatrix& period2, const ClusterOptions& options) {
  if (period1.cols() != period2.cols()) throw Error(Errc::DimMismatch, "periods differ in embedding dim");
  if (period1.rows() < 1 || period2.rows() < 1) throw Error(Errc::EmptySet, "each period needs an occurrence");
  if (options.k_max < 1) throw Error(Errc::InvalidArgument, "k_max must be >= 1");
  if (options.selector == KSelector::elbow && options.method != ClusterMethod::kmeans)
    throw Error(Errc::ConfigError, "the elbow selector works on the k-means inertia curve");
  if (options.selector == KSelector::bic && options.method != ClusterMethod::gmm)
    throw Error(Errc::ConfigError, "the BIC selector needs method gmm");

  RowMatrix pooled(period1.rows() + period2.rows(), period1.cols());
  pooled << period1, period2;
  const auto n = pooled.rows();

  SenseClustering out;
  out.labels.assign(static_cast<std::size_t>(n), 0);

  // Number of distinct points bounds the useful K; identical points collapse to K = 1.
  std::set<std::vector<double>> uniq;
  for (Eigen::Index i = 0; i < n && uniq.size() <= static_cast<std::size_t>(options.k_max); ++i)
    uniq.insert(std::vector<double>(pooled.row(i).data(), pooled.row(i).data() + pooled.cols()));
  const int k_cap = std::min<int>(options.k_max, static_cast<int>(uniq.size()));

  if (k_cap >= 2) {
    switch (options.selector) {
      case KSelector::silhouette: {
        const auto dist = pairwise_distances(pooled);
        Candidate best;
        int best_k = 1;
        for (int k = 2; k <= k_cap; ++k) {
          auto cand = best_silhouette_for_k(pooled, dist, k, options);
          if (cand.valid && (!best.valid || cand.silhouette > best.silhouette)) {
            best = std::move(cand);
            best_k = k;
          }
        }
        if (best.valid && best.silhouette >= options.silhouette_threshold) {
          out.k = best_k;
          out.silhouette = best.silhouette;
          out.labels = std::move(best.labels);
        }
        break;
      }
      case KSelector::elbow: {
        std::vector<double> ks, inertia;
        for (int k = 1; k <= k_cap; ++k) {
          double best = std::numeric_limits<double>::infinity();
          for (int r = 0; r < std::max(1, options.restarts); ++r) {
            const auto seed =
                derive_seed(options.seed, static_cast<std::uint64_t>(k) * 1000 + static_cast<std::uint64_t>(r));
            best = std::min(best, kmeans(pooled, k, seed).inertia);
          }
          ks.push_back(k);
          inertia.push_back(best);
        }
        const int knee = static_cast<int>(ks[elbow_index(ks, inertia)]);
        if (knee >= 2) {
          const auto dist = pairwise_distances(pooled);
          auto cand = best_silhouette_for_k(pooled, dist, knee, options);
          if (cand.valid) {
            out.k = knee;
            out.silhouette = cand.silhouette;
            out.labels = std::move(cand.labels);
          }
        }
        break;
      }
      case KSelector::bic: {
        double best_bic = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= k_cap; ++k) {
          const auto fit = fit_gmm(pooled, k, derive_seed(options.seed, static_cast<std::uint64_t>(k)), options.gmm);
          const double b = fit.bic(n);
          if (b < best_bic) {
            best_bic = b;
            out.k = k;
            out.labels = fit.labels;
          }
        }
        break;
      }
    }
  }

  int k = 1;
  out.labels = compact_labels(out.labels, k);
  out.k = k;
  if (k >= 2 && out.silhouette == 0.0) out.silhouette = silhouette_score(pairwise_distances(pooled), out.labels);
  const auto id = labels_fingerprint(out.labels, k);
  const std::span<const int> all(out.labels);
  out.period1 = period_distribution(all.first(static_cast<std::size_t>(period1.rows())), k, id);
  out.period2 = period_distribution(all.subspan(static_cast<std::size_t>(period1.rows())), k, id);
  return out;
}

double entropy(std::span<const double> weights) {
  double h = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw Error(Errc::InvalidArgument, "negative probability");
    if (w > 0.0) h -= w * std::log(w);
  }
  return h;
}

namespace {

void check_probability(const SenseDistribution& d) {
  if (d.weights.empty()) throw Error(Errc::InvalidArgument, "empty sense distribution");
  double s = 0.0;
  for (double w : d.weights) {
    if (!(w >= 0.0)) throw Error(Errc::InvalidArgument, "sense weights must be nonnegative");
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-9) throw Error(Errc::InvalidArgument, "sense weights must sum to 1");
}

void check_shared(const SenseDistribution& a, const SenseDistribution& b) {
  if (a.clustering_id != 0 && b.clustering_id != 0 && a.clustering_id != b.clustering_id)
    throw Error(Errc::ClusteringMismatch, "sense distributions come from different clusterings");
}

}  // namespace

double ed(const SenseDistribution& p1, const SenseDistribution& p2) {
  check_probability(p1);
  check_probability(p2);
  check_shared(p1, p2);
  return std::abs(entropy(p2.weights) - entropy(p1.weights));
}

double jsd(const SenseDistribution& p1, const SenseDistribution& p2) {
  check_probability(p1);
  check_probability(p2);
  check_shared(p1, p2);
  if (p1.weights.size() != p2.weights.size())
    throw Error(Errc::ClusteringMismatch, "JSD needs distributions over the same clusters");
  double total = 0.0;
  for (std::size_t i = 0; i < p1.weights.size(); ++i) {
    const double a = p1.weights[i];
    const double b = p2.weights[i];
    const double m = 0.5 * (a + b);
    if (a > 0.0) total += 0.5 * a * std::log(a / m);
    if (b > 0.0) total += 0.5 * b * std::log(b / m);
  }
  return std::clamp(total, 0.0, std::numbers::ln2);
}

}  // namespace lexcausal
