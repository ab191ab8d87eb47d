#include "kernel_detail.hpp"

namespace subclust::kernels::serial {

IndexMatrix knn_columns(const Matrix& points, Index k) {
  detail::check_knn(points, k);
  IndexMatrix out(k, points.cols());
  std::vector<double> dist(static_cast<std::size_t>(points.cols()));
  std::vector<Index> order;
  for (Index j = 0; j < points.cols(); ++j) detail::knn_one(points, j, k, dist, order, out);
  return out;
}

Matrix normalized_power(const Matrix& gram, const Vector& norms, double exponent) {
  detail::check_square(gram, norms);
  const Index n = gram.rows();
  Matrix w(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i <= j; ++i) {
      w(i, j) = detail::normalized_power_entry(gram, norms, exponent, i, j);
      w(j, i) = w(i, j);
    }
  }
  return w;
}

Matrix keep_top_k_per_column(const Matrix& c, Index k) {
  detail::check_top_k(c, k);
  Matrix out = Matrix::Zero(c.rows(), c.cols());
  std::vector<Index> order;
  for (Index j = 0; j < c.cols(); ++j) detail::top_k_column(c, j, k, order, out);
  return out;
}

void assign_nearest(const Matrix& points, const Matrix& centers, std::vector<int>& labels,
                    Vector& dist2) {
  detail::check_assign(points, centers);
  labels.resize(std::size_t(points.rows()));
  dist2.resize(points.rows());
  for (Index i = 0; i < points.rows(); ++i) detail::assign_one(points, centers, i, labels, dist2);
}

}  // namespace subclust::kernels::serial
