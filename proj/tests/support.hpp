#pragma once

// Reference computations for the tests. Everything here is written against
// plain Eigen and brute force, independent of the library code paths.

#include <unistd.h>

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "subclust/harness.hpp"

namespace support {

using subclust::Index;
using subclust::Matrix;
using subclust::Vector;

inline Matrix gaussian(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

inline Matrix unit_columns(Matrix m) {
  for (Index j = 0; j < m.cols(); ++j) m.col(j).normalize();
  return m;
}

// Accuracy as the best agreement over all k! relabelings of `pred`.
inline double brute_force_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  int k = 0;
  for (int v : pred) k = std::max(k, v + 1);
  for (int v : truth) k = std::max(k, v + 1);
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      hits += perm[static_cast<std::size_t>(pred[i])] == truth[i] ? 1 : 0;
    }
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return 100.0 * static_cast<double>(best) / static_cast<double>(pred.size());
}

// Ridge self-expression solved by LU on the normal equations.
inline Matrix lsr_dense(const Matrix& x, double lambda) {
  const Matrix g = x.transpose() * x;
  const Matrix a = g + lambda * Matrix::Identity(g.rows(), g.cols());
  return a.partialPivLu().solve(g);
}

inline double lsr_normal_residual(const Matrix& x, const Matrix& c, double lambda) {
  const Matrix g = x.transpose() * x;
  return (g * c + lambda * c - g).cwiseAbs().maxCoeff();
}

// Gradient of lambda ||X - XC||_F^2 + tr(C L C^T), halved, relative to
// max(1, ||X^T X||_max).
inline double smr_stationarity(const Matrix& x, const Matrix& c, const Matrix& l_hat,
                               double lambda) {
  const Matrix g = x.transpose() * x;
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  return (lambda * g * c + c * l_hat - lambda * g).cwiseAbs().maxCoeff() / scale;
}

// Symmetrized 0/1 kNN adjacency from a full sort of every distance column.
inline Matrix knn_graph(const Matrix& x, int k) {
  const Index n = x.cols();
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    std::vector<std::pair<double, Index>> dist;
    for (Index j = 0; j < n; ++j) {
      if (j != i) dist.emplace_back((x.col(i) - x.col(j)).squaredNorm(), j);
    }
    std::sort(dist.begin(), dist.end());
    for (int t = 0; t < k; ++t) {
      const Index j = dist[static_cast<std::size_t>(t)].second;
      w(i, j) = 1.0;
      w(j, i) = 1.0;
    }
  }
  return w;
}

// ||C_offblock||_1 / ||C||_1 for the partition given by `labels`.
inline double off_block_mass(const Matrix& c, const subclust::LabelVector& labels) {
  double off = 0.0;
  double total = 0.0;
  for (Index j = 0; j < c.cols(); ++j) {
    for (Index i = 0; i < c.rows(); ++i) {
      const double a = std::abs(c(i, j));
      total += a;
      if (labels[std::size_t(i)] != labels[std::size_t(j)]) off += a;
    }
  }
  return total > 0.0 ? off / total : 0.0;
}

// Max residual of projecting `block` onto its own top-r left singular space.
inline double subspace_fit_residual(const Matrix& block, Index r) {
  Eigen::JacobiSVD<Matrix> svd(block, Eigen::ComputeThinU);
  const Matrix u = svd.matrixU().leftCols(r);
  return (block - u * (u.transpose() * block)).cwiseAbs().maxCoeff();
}

inline Matrix pairwise_row_distances(const Matrix& e) {
  const Index n = e.rows();
  Matrix d(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) d(i, j) = (e.row(i) - e.row(j)).norm();
  }
  return d;
}

// out(i, j) = w(perm[i], perm[j]).
inline Matrix permute_symmetric(const Matrix& w, const std::vector<Index>& perm) {
  const Index n = w.rows();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) out(i, j) = w(perm[std::size_t(i)], perm[std::size_t(j)]);
  }
  return out;
}

inline std::vector<Index> random_permutation(std::mt19937_64& rng, Index n) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

inline bool max_abs_equal(const Matrix& a, const Matrix& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.size() == 0 || (a - b).cwiseAbs().maxCoeff() <= tol);
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("subclust_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace support
