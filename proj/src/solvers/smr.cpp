#include <Eigen/Eigenvalues>

#include "subclust/solvers.hpp"

namespace subclust {

double smr_objective(const Matrix& x, const Matrix& c, const Matrix& l_hat, double lambda) {
  return lambda * (x - x * c).squaredNorm() + (c * l_hat * c.transpose()).trace();
}

CoefficientMatrix solve_smr(const DataMatrix& data, const SolverConfig& cfg) {
  cfg.validate(SolverKind::smr);
  const Matrix& x = data.values();
  const GraphLaplacian graph = build_knn_laplacian(data, cfg.k_graph, cfg.epsilon);
  const Matrix gram = x.transpose() * x;

  // Stationarity: lambda G C + C L_hat = lambda G with G = X^T X symmetric PSD
  // and L_hat symmetric PD. With G = P S P^T and L_hat = Q D Q^T the system
  // decouples entrywise in the rotated basis C = P Y Q^T:
  //   (lambda s_i + d_j) Y_ij = lambda s_i (P^T Q)_ij.
  Eigen::SelfAdjointEigenSolver<Matrix> eig_g(gram);
  Eigen::SelfAdjointEigenSolver<Matrix> eig_l(graph.l_hat);
  if (eig_g.info() != Eigen::Success || eig_l.info() != Eigen::Success) {
    throw NumericalError("SMR: eigendecomposition failed");
  }
  const Vector s = eig_g.eigenvalues().cwiseMax(0.0);
  const Vector& d = eig_l.eigenvalues();
  const Matrix& p = eig_g.eigenvectors();
  const Matrix& q = eig_l.eigenvectors();

  Matrix y = p.transpose() * q;
  for (Index j = 0; j < y.cols(); ++j) {
    for (Index i = 0; i < y.rows(); ++i) {
      const double ls = cfg.lambda * s[i];
      y(i, j) *= ls / (ls + d[j]);
    }
  }
  Matrix c = p * y * q.transpose();
  if (!c.allFinite()) throw NumericalError("SMR: non-finite coefficients");

  SolverReport report;
  report.converged = true;
  report.objective = smr_objective(x, c, graph.l_hat, cfg.lambda);
  report.primal_residual =
      (cfg.lambda * gram * c + c * graph.l_hat - cfg.lambda * gram).cwiseAbs().maxCoeff();
  return {std::move(c), SolverKind::smr, std::move(report), {}};
}

}  // namespace subclust
