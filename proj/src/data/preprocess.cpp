#include <Eigen/SVD>

#include "subclust/data_model.hpp"

namespace subclust {

DataMatrix pca_project(const DataMatrix& x, Index target_dim) {
  const Index d = x.features();
  const Index n = x.samples();
  if (target_dim < 1 || target_dim > std::min(d, n)) {
    throw ConfigError("PCA target dimension " + std::to_string(target_dim) +
                      " outside 1.." + std::to_string(std::min(d, n)));
  }
  const Vector mean = x.values().rowwise().mean();
  const Matrix centered = x.values().colwise() - mean;
  Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinU);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD failed in PCA");
  Matrix basis = svd.matrixU().leftCols(target_dim);
  // Fix the sign of each direction so the projection is reproducible.
  for (Index c = 0; c < basis.cols(); ++c) {
    Index arg = 0;
    basis.col(c).cwiseAbs().maxCoeff(&arg);
    if (basis(arg, c) < 0) basis.col(c) *= -1.0;
  }
  return DataMatrix(basis.transpose() * centered);
}

DataMatrix normalize_columns(const DataMatrix& x, std::vector<Index>* zero_columns) {
  Matrix out = x.values();
  std::vector<Index> zeros;
  for (Index j = 0; j < out.cols(); ++j) {
    const double norm = out.col(j).norm();
    if (norm == 0.0) {
      zeros.push_back(j);
    } else {
      out.col(j) /= norm;
    }
  }
  if (!zeros.empty()) {
    warn("normalize_columns: " + std::to_string(zeros.size()) +
         " zero column(s) left unnormalized (first index " + std::to_string(zeros.front()) + ")");
  }
  if (zero_columns) *zero_columns = std::move(zeros);
  return DataMatrix(std::move(out));
}

Dataset preprocess(const Dataset& ds, const Preprocessing& steps) {
  Dataset out = ds;
  if (steps.pca_dim) {
    out.matrix = pca_project(out.matrix, *steps.pca_dim);
    out.preprocessing.push_back("pca:" + std::to_string(*steps.pca_dim));
  }
  if (steps.normalize) {
    out.matrix = normalize_columns(out.matrix);
    out.preprocessing.push_back("normalize");
  }
  return out;
}

}  // namespace subclust
