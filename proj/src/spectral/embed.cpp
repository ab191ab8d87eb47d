#include <Eigen/Eigenvalues>
#include <cmath>

#include "subclust/spectral.hpp"

namespace subclust {
namespace {

// Largest-magnitude entry of every column made positive (ties: first index).
void canonicalize_signs(Matrix& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    Index arg = 0;
    double best = -1.0;
    for (Index r = 0; r < vectors.rows(); ++r) {
      const double a = std::abs(vectors(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (vectors(arg, c) < 0.0) vectors.col(c) *= -1.0;
  }
}

}  // namespace

std::string_view to_string(LaplacianKind kind) {
  switch (kind) {
    case LaplacianKind::symmetric_normalized: return "symmetric_normalized";
    case LaplacianKind::random_walk: return "random_walk";
    case LaplacianKind::unnormalized: return "unnormalized";
  }
  return "?";
}

LaplacianKind parse_laplacian_kind(std::string_view text) {
  if (text == "symmetric_normalized") return LaplacianKind::symmetric_normalized;
  if (text == "random_walk") return LaplacianKind::random_walk;
  if (text == "unnormalized") return LaplacianKind::unnormalized;
  throw ConfigError("unknown laplacian '" + std::string(text) + "'");
}

Matrix spectral_embed(const AffinityMatrix& w, const SpectralConfig& cfg) {
  check_affinity(w, 1e-10);
  const Matrix& a = w.values;
  const Index n = a.rows();
  const Index k = cfg.n_clusters;
  if (k < 2 || k > n) {
    throw ConfigError("n_clusters=" + std::to_string(k) + " must lie in 2.." + std::to_string(n));
  }

  const Vector degree = a.rowwise().sum();
  Vector inv_sqrt(n);
  Index isolated = 0;
  for (Index i = 0; i < n; ++i) {
    if (degree[i] > 0.0) {
      inv_sqrt[i] = 1.0 / std::sqrt(degree[i]);
    } else {
      inv_sqrt[i] = 0.0;
      ++isolated;
    }
  }
  if (isolated > 0) {
    warn("spectral_embed: " + std::to_string(isolated) +
         " zero-degree node(s) get a zero embedding row");
  }

  Matrix embedding;
  if (cfg.laplacian == LaplacianKind::unnormalized) {
    Matrix lap = -a;
    lap.diagonal() += degree;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(lap);
    if (eig.info() != Eigen::Success) throw NumericalError("spectral_embed: eigensolver failed");
    embedding = eig.eigenvectors().leftCols(k);
  } else {
    const Matrix normalized = inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(normalized);
    if (eig.info() != Eigen::Success) throw NumericalError("spectral_embed: eigensolver failed");
    // Eigenvalues ascend; take the k largest, largest first.
    embedding = eig.eigenvectors().rightCols(k).rowwise().reverse();
    if (cfg.laplacian == LaplacianKind::random_walk) {
      embedding = inv_sqrt.asDiagonal() * embedding;
    }
  }
  canonicalize_signs(embedding);

  for (Index i = 0; i < n; ++i) {
    if (degree[i] <= 0.0) {
      embedding.row(i).setZero();
      continue;
    }
    if (cfg.laplacian == LaplacianKind::symmetric_normalized) {
      const double norm = embedding.row(i).norm();
      if (norm > 0.0) embedding.row(i) /= norm;
    }
  }
  return embedding;
}

ClusteringOutcome cluster(const AffinityMatrix& w, const SpectralConfig& cfg,
                          const LabelVector* truth) {
  const Matrix embedding = spectral_embed(w, cfg);
  auto km = kmeans(embedding, cfg.n_clusters, cfg.seed, cfg.kmeans_restarts, cfg.kmeans_max_iter);
  ClusteringOutcome out{std::move(km.labels), std::nullopt, km.inertia};
  if (truth) out.accuracy_percent = clustering_accuracy(out.labels, *truth);
  return out;
}

}  // namespace subclust
