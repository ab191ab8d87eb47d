#include <omp.h>

#include "kernel_detail.hpp"

namespace subclust::kernels {

int max_threads() { return omp_get_max_threads(); }

namespace omp {

IndexMatrix knn_columns(const Matrix& points, Index k) {
  detail::check_knn(points, k);
  const Index n = points.cols();
  IndexMatrix out(k, n);
#pragma omp parallel
  {
    std::vector<double> dist(static_cast<std::size_t>(n));
    std::vector<Index> order;
#pragma omp for schedule(static)
    for (Index j = 0; j < n; ++j) detail::knn_one(points, j, k, dist, order, out);
  }
  return out;
}

Matrix normalized_power(const Matrix& gram, const Vector& norms, double exponent) {
  detail::check_square(gram, norms);
  const Index n = gram.rows();
  Matrix w(n, n);
  // Triangular work per column; dynamic scheduling balances it.
#pragma omp parallel for schedule(dynamic, 16)
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
#pragma omp parallel
  {
    std::vector<Index> order;
#pragma omp for schedule(static)
    for (Index j = 0; j < c.cols(); ++j) detail::top_k_column(c, j, k, order, out);
  }
  return out;
}

void assign_nearest(const Matrix& points, const Matrix& centers, std::vector<int>& labels,
                    Vector& dist2) {
  detail::check_assign(points, centers);
  labels.resize(std::size_t(points.rows()));
  dist2.resize(points.rows());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < points.rows(); ++i) detail::assign_one(points, centers, i, labels, dist2);
}

}  // namespace omp
}  // namespace subclust::kernels
