#pragma once

// Data-parallel inner loops shared by the solvers, affinity builders and
// k-means. Every kernel exists twice with identical signatures: `serial` is
// the plain reference kept for testing and benchmarking, `omp` is the OpenMP
// version used in production. Each output element is computed by the same
// per-element routine in both, so results are bit-identical for any thread
// count.
//
//   knn_columns(points, k)
//     k nearest neighbours (Euclidean, self excluded) of every column of
//     `points`. Column j lists the neighbours of sample j by increasing
//     distance, ties broken by smaller index.
//
//   normalized_power(gram, norms, exponent)
//     W_ij = (|gram_ij| / (norms_i * norms_j))^exponent, W_ij = 0 when the
//     denominator is zero. Only the upper triangle of `gram` is read and the
//     result is exactly symmetric.
//
//   keep_top_k_per_column(c, k)
//     Keeps the k entries of largest magnitude in each column, zeroes the
//     rest. Ties at the k-th magnitude go to the smaller row index.
//
//   assign_nearest(points, centers, labels, dist2)
//     labels[i] = argmin_c ||points.row(i) - centers.row(c)||^2 (ties to the
//     smaller c); dist2[i] receives the minimum.

#include <vector>

#include "subclust/common.hpp"

namespace subclust::kernels {

using IndexMatrix = Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic>;

namespace serial {
IndexMatrix knn_columns(const Matrix& points, Index k);
Matrix normalized_power(const Matrix& gram, const Vector& norms, double exponent);
Matrix keep_top_k_per_column(const Matrix& c, Index k);
void assign_nearest(const Matrix& points, const Matrix& centers, std::vector<int>& labels,
                    Vector& dist2);
}  // namespace serial

namespace omp {
IndexMatrix knn_columns(const Matrix& points, Index k);
Matrix normalized_power(const Matrix& gram, const Vector& norms, double exponent);
Matrix keep_top_k_per_column(const Matrix& c, Index k);
void assign_nearest(const Matrix& points, const Matrix& centers, std::vector<int>& labels,
                    Vector& dist2);
}  // namespace omp

/// Number of threads the omp kernels will use.
int max_threads();

}  // namespace subclust::kernels
