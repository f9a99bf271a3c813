#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lexcausal/embedding_store.hpp"

namespace lexcausal {

struct KMeansResult {
  RowMatrix centroids;  // k x d
  std::vector<int> labels;
  double inertia = 0.0;  // sum of squared distances to assigned centroid
};

/// Lloyd iterations from a k-means++ seeding drawn with `seed`.
KMeansResult kmeans(const RowMatrix& data, int k, std::uint64_t seed, int max_iter = 300);

enum class CovarianceType { full, diagonal };

struct GmmOptions {
  /// Full covariance up to this dimension, diagonal above it.
  Eigen::Index full_covariance_max_dim = 10;
  int restarts = 5;
  double tol = 1e-4;  // on the change of mean per-sample log-likelihood
  int max_iter = 200;
  double reg_covar = 1e-6;
};

struct GmmFit {
  CovarianceType covariance_type = CovarianceType::full;
  Eigen::VectorXd weights;
  RowMatrix means;                       // k x d
  std::vector<Eigen::MatrixXd> covariances;  // d x d (full) or d x 1 (diagonal)
  double log_likelihood = 0.0;
  std::vector<int> labels;  // most responsible component
  bool converged = false;

  int k() const noexcept { return static_cast<int>(weights.size()); }
  Eigen::Index free_parameters() const;
  double bic(Eigen::Index n) const;
};

/// EM with k-means initialisation; the best of `options.restarts` fits by log-likelihood.
GmmFit fit_gmm(const RowMatrix& data, int k, std::uint64_t seed, const GmmOptions& options = {});

/// Symmetric matrix of Euclidean distances between rows.
Eigen::MatrixXd pairwise_distances(const RowMatrix& data);

/// Mean silhouette coefficient. Singleton clusters contribute 0; fewer than
/// two distinct labels yields 0.
double silhouette_score(const Eigen::MatrixXd& distances, std::span<const int> labels);

/// Knee of a decreasing convex curve: the point furthest below the chord
/// joining the normalized end points. Returns an index into `y`; 0 when the
/// curve has no knee.
std::size_t elbow_index(std::span<const double> x, std::span<const double> y);

/// Categorical sense distribution of one period. `clustering_id` ties
/// distributions produced by one shared clustering; 0 means ad hoc.
struct SenseDistribution {
  std::vector<double> weights;
  std::vector<int> assignments;
  std::uint64_t clustering_id = 0;

  static SenseDistribution from_weights(std::vector<double> weights);
  int k() const noexcept { return static_cast<int>(weights.size()); }
};

enum class ClusterMethod { kmeans, gmm };
enum class KSelector { silhouette, elbow, bic };

std::string_view to_string(ClusterMethod m) noexcept;
std::string_view to_string(KSelector s) noexcept;
ClusterMethod parse_cluster_method(std::string_view text);
KSelector parse_k_selector(std::string_view text);

struct ClusterOptions {
  ClusterMethod method = ClusterMethod::kmeans;
  KSelector selector = KSelector::silhouette;
  int k_max = 10;
  int restarts = 10;
  double silhouette_threshold = 0.1;
  std::uint64_t seed = 0;
  GmmOptions gmm;
};

struct SenseClustering {
  int k = 1;
  double silhouette = 0.0;  // of the chosen assignment; 0 when k == 1
  std::vector<int> labels;  // pooled rows, period 1 first
  SenseDistribution period1;
  SenseDistribution period2;
};

/// Clusters the pooled occurrences of both periods and reads off each
/// period's sense weights from the shared assignment.
SenseClustering cluster_senses(const RowMatrix& period1, const RowMatrix& period2, const ClusterOptions& options);

/// Natural-log entropy of a probability vector.
double entropy(std::span<const double> weights);

/// |H(p2) - H(p1)|
double ed(const SenseDistribution& p1, const SenseDistribution& p2);

/// Jensen-Shannon divergence (natural log), in [0, ln 2].
double jsd(const SenseDistribution& p1, const SenseDistribution& p2);

}  // namespace lexcausal
