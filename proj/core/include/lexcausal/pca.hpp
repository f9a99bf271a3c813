#pragma once

#include <span>

#include <Eigen/Dense>

#include "lexcausal/embedding_store.hpp"

namespace lexcausal {

struct PCAModel {
  Eigen::VectorXd mean;           // input dim
  RowMatrix components;           // h x d, orthonormal rows
  Eigen::VectorXd explained_variance_ratio;  // h, nonincreasing

  Eigen::Index input_dim() const noexcept { return mean.size(); }
  Eigen::Index output_dim() const noexcept { return components.rows(); }
  double total_explained() const { return explained_variance_ratio.sum(); }
};

/// Fits on the row-wise union of `sets`. h is capped at min(pooled rows, d).
/// Each component's largest-magnitude entry is made positive.
PCAModel fit_pca(std::span<const EmbeddingSet> sets, Eigen::Index h);
PCAModel fit_pca(const RowMatrix& pooled, Eigen::Index h);

/// Rows become (x - mean) * components^T.
EmbeddingSet project(const PCAModel& model, const EmbeddingSet& set);
RowMatrix project(const PCAModel& model, const RowMatrix& rows);

/// Maps projected rows back into the input space.
RowMatrix reconstruct(const PCAModel& model, const RowMatrix& projected);

}  // namespace lexcausal
