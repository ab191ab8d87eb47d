#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "subclust/affinity.hpp"

namespace subclust {

enum class LaplacianKind { symmetric_normalized, random_walk, unnormalized };

std::string_view to_string(LaplacianKind kind);
LaplacianKind parse_laplacian_kind(std::string_view text);

struct SpectralConfig {
  int n_clusters = 2;
  std::uint64_t seed = 0;
  int kmeans_restarts = 10;
  int kmeans_max_iter = 100;
  LaplacianKind laplacian = LaplacianKind::symmetric_normalized;
};

struct ClusteringOutcome {
  LabelVector labels;
  /// Present only when ground truth was supplied.
  std::optional<double> accuracy_percent;
  double kmeans_inertia = 0.0;
};

/// n x n_clusters spectral embedding of W, one row per sample.
///
/// symmetric_normalized: top eigenvectors of D^-1/2 W D^-1/2, rows scaled to
/// unit norm. random_walk: top generalized eigenvectors of W v = t D v.
/// unnormalized: bottom eigenvectors of D - W. Eigenvector signs are fixed so
/// that each column's largest-magnitude entry is positive. Zero-degree nodes
/// get a zero row and a warning.
Matrix spectral_embed(const AffinityMatrix& w, const SpectralConfig& cfg);

struct KMeansResult {
  LabelVector labels;
  double inertia = 0.0;
};

/// k-means++ seeding plus Lloyd iterations on the rows of `points`; the
/// lowest-inertia run out of `restarts` wins. Deterministic in all arguments.
KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed, int restarts, int max_iter);

/// kmeans(spectral_embed(W)), scored against `truth` when provided.
ClusteringOutcome cluster(const AffinityMatrix& w, const SpectralConfig& cfg,
                          const LabelVector* truth = nullptr);

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method).
/// Returns assignment[row] = column.
std::vector<int> solve_assignment(const Matrix& cost);

/// 100 * (best one-to-one label matching agreement) / n.
double clustering_accuracy(const LabelVector& pred, const LabelVector& truth);

}  // namespace subclust
