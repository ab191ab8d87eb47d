#pragma once

#include <string_view>

#include "subclust/data_model.hpp"

namespace subclust {

enum class AffinityKind { sm, ssm, svdm, ipm };

std::string_view to_string(AffinityKind kind);
AffinityKind parse_affinity_kind(std::string_view text);

/// Which SVD factor provides the embedding vectors for SVDM.
enum class SvdSide { rows_m, cols_n };
/// Denominator of the inner-product affinity.
enum class IpmDenominator { data_norms, coeff_norms };

struct AffinityConfig {
  /// SSM: entries kept per column.
  int k_top = 8;
  /// SVDM exponent is 2*alpha, IPM exponent is alpha.
  double alpha = 2.0;
  /// SVDM keeps singular values >= rank_threshold * sigma_1.
  double rank_threshold = 1e-4;
  SvdSide side = SvdSide::rows_m;
  IpmDenominator ipm_denominator = IpmDenominator::data_norms;
  /// Zero the diagonal of the finished affinity.
  bool zero_diagonal = false;

  /// Checks the fields `kind` uses against an n x n coefficient matrix.
  void validate(AffinityKind kind, Index n) const;
};

/// Symmetric, nonnegative, finite n x n similarity.
struct AffinityMatrix {
  Matrix values;
  AffinityKind method;
};

/// W = (|C| + |C|^T) / 2.
AffinityMatrix build_sm(const Matrix& coeff);

/// SM applied after keeping the k_top largest-magnitude entries per column.
AffinityMatrix build_ssm(const Matrix& coeff, const AffinityConfig& cfg);

/// W_ij = |cos(m_i, m_j)|^(2 alpha) over rows of M = U S^(1/2) (or columns of
/// N = S^(1/2) V^T) from the truncated skinny SVD of C. Zero-norm vectors get
/// an all-zero row and column.
AffinityMatrix build_svdm(const Matrix& coeff, const AffinityConfig& cfg);

/// W_ij = (|c_i^T c_j| / (||x_i|| ||x_j||))^alpha, or with ||c_i|| ||c_j|| in
/// coeff_norms mode. Pairs with a zero denominator get 0 and a warning.
AffinityMatrix build_ipm(const Matrix& coeff, const DataMatrix& x, const AffinityConfig& cfg);

/// Dispatches on `kind` and applies the optional zero-diagonal step.
AffinityMatrix build_affinity(AffinityKind kind, const Matrix& coeff, const DataMatrix& x,
                              const AffinityConfig& cfg);

/// Throws NumericalError unless W is finite, nonnegative and symmetric to `tol`.
void check_affinity(const AffinityMatrix& w, double tol = 1e-12);

}  // namespace subclust
