#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "lexcausal/embedding_store.hpp"

namespace lexcausal {

enum class DistanceMetric { euclidean_d2, manhattan_d1, cosine_dcos, combined_d2cos, combined_d2cosd1 };

std::string_view to_string(DistanceMetric metric) noexcept;
DistanceMetric parse_distance_metric(std::string_view text);

constexpr bool uses_cosine(DistanceMetric m) noexcept {
  return m == DistanceMetric::cosine_dcos || m == DistanceMetric::combined_d2cos ||
         m == DistanceMetric::combined_d2cosd1;
}

/// combined_d2cos  = 0.5 * d2 / sqrt(|x1|^2 + |x2|^2) + dcos / 4
/// combined_d2cosd1 = (d2 / sqrt(|x1|^2 + |x2|^2) + dcos / 2 + d1 / (|x1|_1 + |x2|_1)) / 3
///
/// The first term of both only stays below 1 when <x1, x2> >= 0; with an
/// obtuse pair the d2cos value can reach sqrt(2)/2 + 1/2.
double pair_distance(const Eigen::Ref<const Eigen::VectorXd>& x1, const Eigen::Ref<const Eigen::VectorXd>& x2,
                     DistanceMetric metric);

/// Mean distance over the full cross product of rows of a and b.
double apd(const RowMatrix& a, const RowMatrix& b, DistanceMetric metric);
double apd(const EmbeddingSet& a, const EmbeddingSet& b, DistanceMetric metric);

}  // namespace lexcausal
