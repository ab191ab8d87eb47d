#include <Eigen/SVD>

#include "subclust/solvers.hpp"

namespace subclust {

double soft_threshold(double v, double tau) {
  if (v > tau) return v - tau;
  if (v < -tau) return v + tau;
  return 0.0;
}

Matrix soft_threshold(const Matrix& v, double tau) {
  if (tau < 0.0) throw ConfigError("soft_threshold: tau must be nonnegative");
  return v.unaryExpr([tau](double x) { return soft_threshold(x, tau); });
}

Matrix singular_value_threshold(const Matrix& m, double tau) {
  if (tau < 0.0) throw ConfigError("singular_value_threshold: tau must be nonnegative");
  if (!m.allFinite()) throw NumericalError("singular_value_threshold: non-finite input");
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("singular_value_threshold: SVD failed");
  const Vector& s = svd.singularValues();
  Index keep = 0;
  while (keep < s.size() && s[keep] > tau) ++keep;
  if (keep == 0) return Matrix::Zero(m.rows(), m.cols());
  const Vector shrunk = (s.head(keep).array() - tau).matrix();
  return svd.matrixU().leftCols(keep) * shrunk.asDiagonal() *
         svd.matrixV().leftCols(keep).transpose();
}

Matrix column_shrink(const Matrix& m, double tau) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    const double norm = m.col(j).norm();
    if (norm > tau) out.col(j) = ((norm - tau) / norm) * m.col(j);
  }
  return out;
}

}  // namespace subclust
