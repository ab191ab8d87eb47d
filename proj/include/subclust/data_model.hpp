#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subclust/common.hpp"

namespace subclust {

/// d x n real matrix holding one sample per column. Always finite, n >= 2, d >= 1.
class DataMatrix {
 public:
  /// Validates the invariants and throws DataError on violation.
  explicit DataMatrix(Matrix values);

  const Matrix& values() const noexcept { return values_; }
  Index features() const noexcept { return values_.rows(); }
  Index samples() const noexcept { return values_.cols(); }

 private:
  Matrix values_;
};

/// Ground-truth or predicted cluster assignment, values in 0..k-1.
class LabelVector {
 public:
  LabelVector() = default;
  /// Throws DataError if any label is outside 0..k-1.
  LabelVector(std::vector<int> labels, int k);

  /// Remaps arbitrary integer labels to 0..k-1 by increasing original value.
  static LabelVector remap(std::span<const std::int64_t> raw);

  const std::vector<int>& labels() const noexcept { return labels_; }
  int clusters() const noexcept { return k_; }
  std::size_t size() const noexcept { return labels_.size(); }
  int operator[](std::size_t i) const { return labels_[i]; }

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

struct Dataset {
  Dataset(DataMatrix matrix, LabelVector truth, std::string name = {},
          std::vector<std::string> preprocessing = {});

  DataMatrix matrix;
  LabelVector truth;
  std::string name;
  /// Transforms applied so far, in order (e.g. "pca:60", "normalize").
  std::vector<std::string> preprocessing;
};

enum class FileFormat { csv, binary };

FileFormat parse_file_format(std::string_view text);

// Matrix files: CSV stores one sample per row; binary stores the
// "SSCB" v1 layout (u32 d, u32 n, column-major f64, all little-endian).
Matrix read_matrix(const std::filesystem::path& path, FileFormat format);
void write_matrix(const std::filesystem::path& path, const Matrix& columns_as_samples,
                  FileFormat format);

/// Labels files hold one integer per line regardless of matrix format.
std::vector<std::int64_t> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const LabelVector& labels);

Dataset load_dataset(const std::filesystem::path& matrix_path,
                     const std::filesystem::path& labels_path, FileFormat format);
void save_dataset(const Dataset& ds, const std::filesystem::path& matrix_path,
                  const std::filesystem::path& labels_path, FileFormat format);

/// Projects mean-centred data onto its top `target_dim` principal directions,
/// rows ordered by decreasing variance. Requires 1 <= target_dim <= min(d, n).
DataMatrix pca_project(const DataMatrix& x, Index target_dim);

/// Scales every nonzero column to unit l2 norm. Zero columns are left as they
/// are and reported through warn(); their indices go to `zero_columns` if given.
DataMatrix normalize_columns(const DataMatrix& x, std::vector<Index>* zero_columns = nullptr);

struct Preprocessing {
  std::optional<Index> pca_dim;
  bool normalize = true;
};

/// PCA (optional) followed by column normalization (optional), recorded in
/// the dataset's preprocessing trail.
Dataset preprocess(const Dataset& ds, const Preprocessing& steps);

struct SyntheticSpec {
  int num_subspaces = 5;
  int subspace_dim = 3;
  int ambient_dim = 50;
  int points_per_subspace = 30;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  /// Require ambient_dim >= num_subspaces * subspace_dim.
  bool independent = true;

  /// Throws ConfigError if the spec cannot be realized.
  void validate() const;
};

/// Union of random linear subspaces. Each basis is the Q factor of a seeded
/// Gaussian matrix; each point is basis * (unit-sphere coefficients) plus
/// isotropic Gaussian noise of std noise_sigma. Label = subspace index.
Dataset generate_synthetic(const SyntheticSpec& spec);

/// Bases used by generate_synthetic (one ambient_dim x subspace_dim block per
/// subspace), exposed for verification.
std::vector<Matrix> synthetic_bases(const SyntheticSpec& spec);

}  // namespace subclust
