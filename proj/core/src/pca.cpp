#include "lexcausal/pca.hpp"

#include <algorithm>

#include "lexcausal/error.hpp"

namespace lexcausal {

PCAModel fit_pca(std::span<const EmbeddingSet> sets, Eigen::Index h) {
  if (sets.empty()) throw Error(Errc::InsufficientRows, "no embedding sets to fit PCA on");
  const auto d = sets.front().dim();
  Eigen::Index n = 0;
  for (const auto& s : sets) {
    if (s.dim() != d) throw Error(Errc::DimMismatch, "embedding sets differ in dim");
    n += s.count();
  }
  RowMatrix pooled(n, d);
  Eigen::Index row = 0;
  for (const auto& s : sets) {
    pooled.middleRows(row, s.count()) = s.matrix;
    row += s.count();
  }
  return fit_pca(pooled, h);
}

PCAModel fit_pca(const RowMatrix& pooled, Eigen::Index h) {
  const auto n = pooled.rows();
  const auto d = pooled.cols();
  if (n < 1 || d < 1) throw Error(Errc::InsufficientRows, "PCA needs at least one row");
  if (h < 1) throw Error(Errc::InvalidArgument, "PCA target dimension must be >= 1");
  h = std::min({h, n, d});

  PCAModel model;
  model.mean = pooled.colwise().mean().transpose();
  Eigen::MatrixXd centered = pooled.rowwise() - model.mean.transpose();

  // Thin SVD of the centered data: right singular vectors are the covariance
  // eigenvectors and squared singular values are proportional to the eigenvalues.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const Eigen::MatrixXd& v = svd.matrixV();

  const double total = centered.squaredNorm();
  model.components.resize(h, d);
  model.explained_variance_ratio.resize(h);
  for (Eigen::Index k = 0; k < h; ++k) {
    Eigen::VectorXd comp = k < v.cols() ? Eigen::VectorXd(v.col(k)) : Eigen::VectorXd::Zero(d);
    Eigen::Index arg = 0;
    comp.cwiseAbs().maxCoeff(&arg);
    if (comp(arg) < 0) comp = -comp;
    model.components.row(k) = comp.transpose();
    const double s = k < sv.size() ? sv(k) : 0.0;
    model.explained_variance_ratio(k) = total > 0.0 ? std::clamp(s * s / total, 0.0, 1.0) : 0.0;
  }
  return model;
}

RowMatrix project(const PCAModel& model, const RowMatrix& rows) {
  if (rows.cols() != model.input_dim())
    throw Error(Errc::DimMismatch, "projecting dim " + std::to_string(rows.cols()) + " through a PCA fit on dim " +
                                       std::to_string(model.input_dim()));
  return (rows.rowwise() - model.mean.transpose()) * model.components.transpose();
}

EmbeddingSet project(const PCAModel& model, const EmbeddingSet& set) {
  return EmbeddingSet{set.word, set.period, project(model, set.matrix)};
}

RowMatrix reconstruct(const PCAModel& model, const RowMatrix& projected) {
  if (projected.cols() != model.output_dim()) throw Error(Errc::DimMismatch, "reconstruct: wrong projected dim");
  RowMatrix out = projected * model.components;
  out.rowwise() += model.mean.transpose();
  return out;
}

}  // namespace lexcausal
