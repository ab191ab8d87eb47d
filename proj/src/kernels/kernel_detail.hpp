#pragma once

// Per-element work shared by the serial and OpenMP kernel drivers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "subclust/kernels.hpp"

namespace subclust::kernels::detail {

inline void check_knn(const Matrix& points, Index k) {
  if (k < 1 || k >= points.cols()) {
    throw ConfigError("k nearest neighbours: k=" + std::to_string(k) + " must lie in 1.." +
                      std::to_string(points.cols() - 1));
  }
}

/// Fills out.col(j) with the k nearest neighbours of sample j.
inline void knn_one(const Matrix& points, Index j, Index k, std::vector<double>& dist,
                    std::vector<Index>& order, IndexMatrix& out) {
  const Index n = points.cols();
  for (Index i = 0; i < n; ++i) dist[std::size_t(i)] = (points.col(i) - points.col(j)).squaredNorm();
  order.resize(std::size_t(n - 1));
  Index pos = 0;
  for (Index i = 0; i < n; ++i) {
    if (i != j) order[std::size_t(pos++)] = i;
  }
  auto closer = [&](Index a, Index b) {
    const double da = dist[std::size_t(a)];
    const double db = dist[std::size_t(b)];
    return da < db || (da == db && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + k, order.end(), closer);
  for (Index r = 0; r < k; ++r) out(r, j) = order[std::size_t(r)];
}

inline double normalized_power_entry(const Matrix& gram, const Vector& norms, double exponent,
                                     Index i, Index j) {
  const double denom = norms[i] * norms[j];
  if (denom == 0.0) return 0.0;
  const double ratio = std::abs(gram(i, j)) / denom;
  return std::pow(ratio, exponent);
}

inline void check_square(const Matrix& gram, const Vector& norms) {
  if (gram.rows() != gram.cols() || gram.rows() != norms.size()) {
    throw ConfigError("normalized_power: gram must be square and match norms");
  }
}

inline void top_k_column(const Matrix& c, Index j, Index k, std::vector<Index>& order,
                         Matrix& out) {
  const Index n = c.rows();
  order.resize(std::size_t(n));
  std::iota(order.begin(), order.end(), Index{0});
  auto larger = [&](Index a, Index b) {
    const double va = std::abs(c(a, j));
    const double vb = std::abs(c(b, j));
    return va > vb || (va == vb && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + k, order.end(), larger);
  for (Index r = 0; r < k; ++r) {
    const Index i = order[std::size_t(r)];
    out(i, j) = c(i, j);
  }
}

inline void check_top_k(const Matrix& c, Index k) {
  if (k < 1 || k > c.rows()) {
    throw ConfigError("top-k sparsification: k=" + std::to_string(k) + " must lie in 1.." +
                      std::to_string(c.rows()));
  }
}

inline void assign_one(const Matrix& points, const Matrix& centers, Index i,
                       std::vector<int>& labels, Vector& dist2) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Index c = 0; c < centers.rows(); ++c) {
    const double d = (points.row(i) - centers.row(c)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  labels[std::size_t(i)] = best;
  dist2[i] = best_d;
}

inline void check_assign(const Matrix& points, const Matrix& centers) {
  if (centers.rows() < 1 || centers.cols() != points.cols()) {
    throw ConfigError("assign_nearest: centers must be non-empty with matching width");
  }
}

}  // namespace subclust::kernels::detail
