#include <limits>

#include "subclust/kernels.hpp"
#include "subclust/spectral.hpp"

namespace subclust {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in [0, 1) from 53 random bits; independent of the standard
// library's distribution implementations.
double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

Matrix seed_plus_plus(const Matrix& points, int k, std::uint64_t& state) {
  const Index n = points.rows();
  Matrix centers(k, points.cols());
  std::vector<bool> chosen(std::size_t(n), false);

  Index first = static_cast<Index>(uniform01(state) * double(n));
  first = std::min(first, n - 1);
  centers.row(0) = points.row(first);
  chosen[std::size_t(first)] = true;

  Vector closest = (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = closest.sum();
    Index pick = -1;
    if (total > 0.0) {
      const double target = uniform01(state) * total;
      double acc = 0.0;
      for (Index i = 0; i < n; ++i) {
        acc += closest[i];
        if (closest[i] > 0.0 && acc > target) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        // Rounding pushed target past the running sum: take the last candidate.
        for (Index i = n - 1; i >= 0; --i) {
          if (closest[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // Every remaining point coincides with a center.
      for (Index i = 0; i < n; ++i) {
        if (!chosen[std::size_t(i)]) {
          pick = i;
          break;
        }
      }
    }
    chosen[std::size_t(pick)] = true;
    centers.row(c) = points.row(pick);
    closest = closest.cwiseMin((points.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

KMeansResult lloyd(const Matrix& points, Matrix centers, int max_iter) {
  const Index n = points.rows();
  const Index k = centers.rows();
  std::vector<int> labels(std::size_t(n), -1);
  std::vector<int> next;
  Vector dist2;
  for (int it = 0; it < max_iter; ++it) {
    kernels::omp::assign_nearest(points, centers, next, dist2);
    if (next == labels) break;
    labels = next;

    Matrix sums = Matrix::Zero(k, points.cols());
    std::vector<Index> counts(std::size_t(k), 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(labels[std::size_t(i)]) += points.row(i);
      ++counts[std::size_t(labels[std::size_t(i)])];
    }
    for (Index c = 0; c < k; ++c) {
      if (counts[std::size_t(c)] > 0) {
        centers.row(c) = sums.row(c) / double(counts[std::size_t(c)]);
      } else {
        // Empty cluster: move it onto the point farthest from its center.
        Index far = 0;
        dist2.maxCoeff(&far);
        centers.row(c) = points.row(far);
        dist2[far] = 0.0;
      }
    }
  }
  kernels::omp::assign_nearest(points, centers, labels, dist2);
  double inertia = 0.0;
  for (Index i = 0; i < n; ++i) inertia += dist2[i];
  return {LabelVector(std::move(labels), static_cast<int>(k)), inertia};
}

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed, int restarts, int max_iter) {
  if (k < 1 || k > points.rows()) {
    throw ConfigError("kmeans: k=" + std::to_string(k) + " must lie in 1.." +
                      std::to_string(points.rows()));
  }
  if (restarts < 1) throw ConfigError("kmeans: restarts must be >= 1");
  if (max_iter < 1) throw ConfigError("kmeans: max_iter must be >= 1");
  if (!points.allFinite()) throw NumericalError("kmeans: non-finite points");

  std::uint64_t state = seed;
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Matrix centers = seed_plus_plus(points, k, state);
    KMeansResult run = lloyd(points, std::move(centers), max_iter);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

}  // namespace subclust
