#include "lexcausal/distance.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "lexcausal/error.hpp"

namespace lexcausal {

std::string_view to_string(DistanceMetric metric) noexcept {
  switch (metric) {
    case DistanceMetric::euclidean_d2: return "euclidean_d2";
    case DistanceMetric::manhattan_d1: return "manhattan_d1";
    case DistanceMetric::cosine_dcos: return "cosine_dcos";
    case DistanceMetric::combined_d2cos: return "combined_d2cos";
    case DistanceMetric::combined_d2cosd1: return "combined_d2cosd1";
  }
  return "combined_d2cos";
}

DistanceMetric parse_distance_metric(std::string_view text) {
  for (auto m : {DistanceMetric::euclidean_d2, DistanceMetric::manhattan_d1, DistanceMetric::cosine_dcos,
                 DistanceMetric::combined_d2cos, DistanceMetric::combined_d2cosd1})
    if (to_string(m) == text) return m;
  throw Error(Errc::ConfigError, "unknown distance metric '" + std::string(text) + "'");
}

namespace {

// Per-row norms are cached by apd(); pair_distance computes them on the fly.
struct RowTerms {
  double sq_norm;
  double l1_norm;
  double inv_norm;  // 0 for a zero row
};

RowTerms row_terms(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double sq = x.squaredNorm();
  return RowTerms{sq, x.lpNorm<1>(), sq > 0.0 ? 1.0 / std::sqrt(sq) : 0.0};
}

// 1 - cos as half the squared distance of the unit vectors: exact zero on
// identical inputs and no cancellation for nearly parallel ones.
template <class A, class B>
double cosine_distance(const A& x1, const B& x2, RowTerms t1, RowTerms t2) {
  if (t1.sq_norm == 0.0 || t2.sq_norm == 0.0)
    throw Error(Errc::ZeroVectorForCosine, "cosine distance of a zero vector");
  return 0.5 * (x1 * t1.inv_norm - x2 * t2.inv_norm).squaredNorm();
}

template <class A, class B>
double distance_kernel(const A& x1, const B& x2, RowTerms t1, RowTerms t2, DistanceMetric metric) {
  switch (metric) {
    case DistanceMetric::euclidean_d2:
      return (x1 - x2).norm();
    case DistanceMetric::manhattan_d1:
      return (x1 - x2).template lpNorm<1>();
    case DistanceMetric::cosine_dcos:
      return cosine_distance(x1, x2, t1, t2);
    case DistanceMetric::combined_d2cos: {
      const double dcos = cosine_distance(x1, x2, t1, t2);
      return 0.5 * (x1 - x2).norm() / std::sqrt(t1.sq_norm + t2.sq_norm) + dcos / 4.0;
    }
    case DistanceMetric::combined_d2cosd1: {
      const double dcos = cosine_distance(x1, x2, t1, t2);
      const double d2_term = (x1 - x2).norm() / std::sqrt(t1.sq_norm + t2.sq_norm);
      const double d1_term = (x1 - x2).template lpNorm<1>() / (t1.l1_norm + t2.l1_norm);
      return (d2_term + dcos / 2.0 + d1_term) / 3.0;
    }
  }
  return 0.0;
}

}  // namespace

double pair_distance(const Eigen::Ref<const Eigen::VectorXd>& x1, const Eigen::Ref<const Eigen::VectorXd>& x2,
                     DistanceMetric metric) {
  if (x1.size() != x2.size()) throw Error(Errc::DimMismatch, "pair_distance on vectors of different length");
  return distance_kernel(x1, x2, row_terms(x1), row_terms(x2), metric);
}

double apd(const RowMatrix& a, const RowMatrix& b, DistanceMetric metric) {
  if (a.rows() == 0 || b.rows() == 0) throw Error(Errc::EmptySet, "APD over an empty set");
  if (a.cols() != b.cols()) throw Error(Errc::DimMismatch, "APD over sets of different dim");

  auto terms = [](const RowMatrix& m) {
    std::vector<RowTerms> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      out[static_cast<std::size_t>(i)] = row_terms(m.row(i).transpose());
    return out;
  };
  const auto ta = terms(a);
  const auto tb = terms(b);

  double total = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double row_total = 0.0;
    for (Eigen::Index j = 0; j < b.rows(); ++j)
      row_total += distance_kernel(a.row(i), b.row(j), ta[static_cast<std::size_t>(i)],
                                   tb[static_cast<std::size_t>(j)], metric);
    total += row_total;
  }
  return total / (static_cast<double>(a.rows()) * static_cast<double>(b.rows()));
}

double apd(const EmbeddingSet& a, const EmbeddingSet& b, DistanceMetric metric) {
  return apd(a.matrix, b.matrix, metric);
}

}  // namespace lexcausal
