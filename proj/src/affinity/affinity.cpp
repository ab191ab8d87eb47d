#include <Eigen/SVD>
#include <cmath>

#include "subclust/affinity.hpp"
#include "subclust/kernels.hpp"

namespace subclust {
namespace {

void require_square(const Matrix& coeff) {
  if (coeff.rows() != coeff.cols() || coeff.rows() < 1) {
    throw ConfigError("coefficient matrix must be square and non-empty");
  }
  if (!coeff.allFinite()) throw NumericalError("coefficient matrix has non-finite entries");
}

Matrix symmetrized_abs(const Matrix& c) {
  const Matrix a = c.cwiseAbs();
  return 0.5 * (a + a.transpose());
}

}  // namespace

std::string_view to_string(AffinityKind kind) {
  switch (kind) {
    case AffinityKind::sm: return "sm";
    case AffinityKind::ssm: return "ssm";
    case AffinityKind::svdm: return "svdm";
    case AffinityKind::ipm: return "ipm";
  }
  return "?";
}

AffinityKind parse_affinity_kind(std::string_view text) {
  if (text == "sm") return AffinityKind::sm;
  if (text == "ssm") return AffinityKind::ssm;
  if (text == "svdm") return AffinityKind::svdm;
  if (text == "ipm") return AffinityKind::ipm;
  throw ConfigError("unknown affinity '" + std::string(text) + "' (expected sm, ssm, svdm, ipm)");
}

void AffinityConfig::validate(AffinityKind kind, Index n) const {
  if (kind == AffinityKind::ssm && (k_top < 1 || k_top > n)) {
    throw ConfigError("k_top=" + std::to_string(k_top) + " must lie in 1.." + std::to_string(n));
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive");
  if (!(rank_threshold > 0.0 && rank_threshold < 1.0)) {
    throw ConfigError("rank_threshold must lie in (0, 1)");
  }
}

AffinityMatrix build_sm(const Matrix& coeff) {
  require_square(coeff);
  return {symmetrized_abs(coeff), AffinityKind::sm};
}

AffinityMatrix build_ssm(const Matrix& coeff, const AffinityConfig& cfg) {
  require_square(coeff);
  cfg.validate(AffinityKind::ssm, coeff.rows());
  const Matrix kept = kernels::omp::keep_top_k_per_column(coeff, cfg.k_top);
  return {symmetrized_abs(kept), AffinityKind::ssm};
}

AffinityMatrix build_svdm(const Matrix& coeff, const AffinityConfig& cfg) {
  require_square(coeff);
  cfg.validate(AffinityKind::svdm, coeff.rows());
  const Index n = coeff.rows();
  Eigen::BDCSVD<Matrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("SVDM: SVD failed");
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return {Matrix::Zero(n, n), AffinityKind::svdm};

  Index rank = 0;
  while (rank < s.size() && s[rank] >= cfg.rank_threshold * s[0]) ++rank;
  const Vector root = s.head(rank).cwiseSqrt();
  // Embedding vectors as rows: U S^(1/2) or (S^(1/2) V^T)^T = V S^(1/2).
  const Matrix& factor = cfg.side == SvdSide::rows_m ? svd.matrixU() : svd.matrixV();
  const Matrix vectors = factor.leftCols(rank) * root.asDiagonal();
  const Matrix gram = vectors * vectors.transpose();
  // A zero row (column) of C leaves rounding-level residue in U (V); treat it
  // as exactly zero so it cannot produce spurious cosines.
  Vector norms = vectors.rowwise().norm();
  const double cutoff = 10.0 * double(n) * std::numeric_limits<double>::epsilon() * std::sqrt(s[0]);
  norms = (norms.array() <= cutoff).select(0.0, norms);
  return {kernels::omp::normalized_power(gram, norms, 2.0 * cfg.alpha), AffinityKind::svdm};
}

AffinityMatrix build_ipm(const Matrix& coeff, const DataMatrix& x, const AffinityConfig& cfg) {
  require_square(coeff);
  cfg.validate(AffinityKind::ipm, coeff.rows());
  if (x.samples() != coeff.cols()) {
    throw ConfigError("IPM: data has " + std::to_string(x.samples()) + " samples but C is " +
                      std::to_string(coeff.cols()) + " wide");
  }
  const Vector norms = cfg.ipm_denominator == IpmDenominator::data_norms
                           ? Vector(x.values().colwise().norm().transpose())
                           : Vector(coeff.colwise().norm().transpose());
  const Index zeros = (norms.array() == 0.0).count();
  if (zeros > 0) {
    warn("IPM: " + std::to_string(zeros) +
         " zero-norm column(s); their affinities are set to zero");
  }
  const Matrix gram = coeff.transpose() * coeff;
  return {kernels::omp::normalized_power(gram, norms, cfg.alpha), AffinityKind::ipm};
}

AffinityMatrix build_affinity(AffinityKind kind, const Matrix& coeff, const DataMatrix& x,
                              const AffinityConfig& cfg) {
  AffinityMatrix w = [&] {
    switch (kind) {
      case AffinityKind::sm: return build_sm(coeff);
      case AffinityKind::ssm: return build_ssm(coeff, cfg);
      case AffinityKind::svdm: return build_svdm(coeff, cfg);
      case AffinityKind::ipm: return build_ipm(coeff, x, cfg);
    }
    throw ConfigError("unknown affinity");
  }();
  if (cfg.zero_diagonal) w.values.diagonal().setZero();
  return w;
}

void check_affinity(const AffinityMatrix& w, double tol) {
  const Matrix& v = w.values;
  if (v.rows() != v.cols()) throw NumericalError("affinity matrix is not square");
  if (!v.allFinite()) throw NumericalError("affinity matrix has non-finite entries");
  if ((v.array() < 0.0).any()) throw NumericalError("affinity matrix has negative entries");
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw NumericalError("affinity matrix is not symmetric");
  }
}

}  // namespace subclust
