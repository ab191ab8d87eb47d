#include <Eigen/Cholesky>
#include <cmath>

#include "subclust/solvers.hpp"

namespace subclust {
namespace {

// Per-entry cost of a residual r split optimally into E (l1) and Z (squared):
// min_e lambda_e |e| + (lambda_z / 2)(r - e)^2, i.e. a Huber function.
double residual_cost(double r, double lambda_e, double lambda_z) {
  const double a = std::abs(r);
  if (lambda_z <= 0.0) return lambda_e * a;
  const double knee = lambda_e / lambda_z;
  if (a <= knee) return 0.5 * lambda_z * a * a;
  return lambda_e * a - 0.5 * lambda_e * knee;
}

double feasible_objective(const Matrix& x, const Matrix& c, double lambda_e, double lambda_z) {
  const Matrix r = x - x * c;
  double cost = 0.0;
  for (Index j = 0; j < r.cols(); ++j) {
    for (Index i = 0; i < r.rows(); ++i) cost += residual_cost(r(i, j), lambda_e, lambda_z);
  }
  return c.cwiseAbs().sum() + cost;
}

}  // namespace

double ssc_incoherence_scale(const Matrix& x) {
  const Matrix gram = (x.transpose() * x).cwiseAbs();
  double mu = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < gram.cols(); ++i) {
    double best = 0.0;
    for (Index j = 0; j < gram.rows(); ++j) {
      if (j != i) best = std::max(best, gram(j, i));
    }
    mu = std::min(mu, best);
  }
  return mu;
}

double ssc_feasible_objective(const Matrix& x, const Matrix& c, double lambda_e) {
  return feasible_objective(x, c, lambda_e, 0.0);
}

CoefficientMatrix solve_ssc(const DataMatrix& data, const SolverConfig& cfg) {
  cfg.validate(SolverKind::ssc);
  const Matrix& x = data.values();
  const Index d = x.rows();
  const Index n = x.cols();

  const double mu = ssc_incoherence_scale(x);
  if (!(mu > 0.0)) {
    throw NumericalError("SSC: some column is orthogonal to all others (or zero); normalize first");
  }
  const double lambda_e = cfg.lambda / mu;
  const double lambda_z = cfg.lambda_z / mu;
  const double rho = cfg.penalty_init.value_or(cfg.lambda);
  const double rho_fit = rho / mu;

  // ADMM over the split C = A (A carries the least-squares coupling, C the
  // l1 term and diag constraint) and X = XA + E + Z.
  const Matrix gram = x.transpose() * x;
  Matrix system = rho_fit * gram;
  system.diagonal().array() += rho;
  Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) throw NumericalError("SSC: Cholesky factorization failed");

  Matrix a = Matrix::Zero(n, n);
  Matrix c = Matrix::Zero(n, n);
  Matrix e = Matrix::Zero(d, n);
  Matrix z = Matrix::Zero(d, n);
  Matrix dual_fit = Matrix::Zero(d, n);
  Matrix dual_c = Matrix::Zero(n, n);

  // Joint (E, Z) step: for target R, Z = rho_fit (R - E) / (lambda_z + rho_fit)
  // and E = soft(R, e_tau).
  const double e_tau = lambda_z > 0.0
                           ? lambda_e * (lambda_z + rho_fit) / (lambda_z * rho_fit)
                           : lambda_e / rho_fit;

  SolverReport report;
  double res_fit = 0.0;
  double res_c = 0.0;
  int it = 0;
  while (it < cfg.max_iter) {
    ++it;
    a = llt.solve(rho_fit * x.transpose() * (x - e - z + dual_fit / rho_fit) + rho * c - dual_c);

    c = soft_threshold(a + dual_c / rho, 1.0 / rho);
    c.diagonal().setZero();

    const Matrix xa = x * a;
    const Matrix target = x - xa + dual_fit / rho_fit;
    e = soft_threshold(target, e_tau);
    if (lambda_z > 0.0) z = (rho_fit / (lambda_z + rho_fit)) * (target - e);

    const Matrix r_fit = x - xa - e - z;
    const Matrix r_c = a - c;
    dual_fit += rho_fit * r_fit;
    dual_c += rho * r_c;

    res_fit = r_fit.cwiseAbs().maxCoeff();
    res_c = r_c.cwiseAbs().maxCoeff();
    report.objective_trace.push_back(feasible_objective(x, c, lambda_e, lambda_z));
    if (!std::isfinite(res_fit) || !std::isfinite(res_c)) {
      throw NumericalError("SSC: iteration diverged");
    }
    if (res_fit <= cfg.tol && res_c <= cfg.tol) break;
  }

  report.iterations = it;
  report.primal_residual = std::max(res_fit, res_c);
  report.converged = report.primal_residual <= cfg.tol;
  report.objective = report.objective_trace.back();
  report.error_l1 = e.cwiseAbs().sum();
  report.noise_fro = z.norm();
  return {std::move(c), SolverKind::ssc, std::move(report), e + z};
}

}  // namespace subclust
