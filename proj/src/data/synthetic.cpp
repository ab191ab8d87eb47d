#include <Eigen/QR>
#include <random>

#include "subclust/data_model.hpp"

namespace subclust {
namespace {

Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  // Fill column by column so the stream order is fixed.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

std::vector<Matrix> draw_bases(const SyntheticSpec& spec, std::mt19937_64& rng) {
  std::vector<Matrix> bases;
  bases.reserve(static_cast<std::size_t>(spec.num_subspaces));
  for (int s = 0; s < spec.num_subspaces; ++s) {
    const Matrix g = gaussian(spec.ambient_dim, spec.subspace_dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    bases.push_back(qr.householderQ() * Matrix::Identity(spec.ambient_dim, spec.subspace_dim));
  }
  return bases;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (num_subspaces < 1) throw ConfigError("num_subspaces must be >= 1");
  if (subspace_dim < 1) throw ConfigError("subspace_dim must be >= 1");
  if (ambient_dim < subspace_dim) throw ConfigError("ambient_dim must be >= subspace_dim");
  if (points_per_subspace < subspace_dim) {
    throw ConfigError("points_per_subspace must be >= subspace_dim");
  }
  if (!(noise_sigma >= 0.0)) throw ConfigError("noise_sigma must be nonnegative");
  if (independent && ambient_dim < num_subspaces * subspace_dim) {
    throw ConfigError("independent subspaces need ambient_dim >= num_subspaces * subspace_dim (" +
                      std::to_string(num_subspaces * subspace_dim) + ")");
  }
  if (static_cast<long long>(num_subspaces) * points_per_subspace < 2) {
    throw ConfigError("synthetic dataset needs at least 2 points");
  }
}

std::vector<Matrix> synthetic_bases(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  return draw_bases(spec, rng);
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const auto bases = draw_bases(spec, rng);

  const Index m = spec.points_per_subspace;
  const Index n = m * spec.num_subspaces;
  Matrix x(spec.ambient_dim, n);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int s = 0; s < spec.num_subspaces; ++s) {
    Matrix coeffs = gaussian(spec.subspace_dim, m, rng);
    for (Index j = 0; j < m; ++j) {
      double norm = coeffs.col(j).norm();
      // Measure-zero case: fall back to e_1.
      if (norm == 0.0) {
        coeffs(0, j) = 1.0;
        norm = 1.0;
      }
      coeffs.col(j) /= norm;
    }
    x.middleCols(s * m, m) = bases[static_cast<std::size_t>(s)] * coeffs;
    std::fill_n(labels.begin() + s * m, m, s);
  }
  if (spec.noise_sigma > 0.0) x += spec.noise_sigma * gaussian(spec.ambient_dim, n, rng);

  return Dataset(DataMatrix(std::move(x)), LabelVector(std::move(labels), spec.num_subspaces),
                 "synthetic");
}

}  // namespace subclust
