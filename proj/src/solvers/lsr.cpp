#include <Eigen/Cholesky>

#include "subclust/solvers.hpp"

namespace subclust {

CoefficientMatrix solve_lsr(const DataMatrix& data, const SolverConfig& cfg) {
  cfg.validate(SolverKind::lsr);
  const Matrix& x = data.values();
  const Index n = x.cols();
  const Matrix gram = x.transpose() * x;
  Matrix regularized = gram;
  regularized.diagonal().array() += cfg.lambda;
  Eigen::LLT<Matrix> llt(regularized);
  if (llt.info() != Eigen::Success) throw NumericalError("LSR: Cholesky factorization failed");

  Matrix c;
  if (!cfg.diag_constraint) {
    c = llt.solve(gram);
  } else {
    // Column i: minimize with c_ii = 0 gives c_i = e_i - P e_i / P_ii,
    // P = (X^T X + lambda I)^{-1}.
    const Matrix p = llt.solve(Matrix::Identity(n, n));
    c = -p * p.diagonal().cwiseInverse().asDiagonal();
    c.diagonal().setZero();
  }
  if (!c.allFinite()) throw NumericalError("LSR: non-finite coefficients");

  SolverReport report;
  report.converged = true;
  report.objective = (x - x * c).squaredNorm() + cfg.lambda * c.squaredNorm();
  report.primal_residual = cfg.diag_constraint ? c.diagonal().cwiseAbs().maxCoeff() : 0.0;
  return {std::move(c), SolverKind::lsr, std::move(report), {}};
}

}  // namespace subclust
