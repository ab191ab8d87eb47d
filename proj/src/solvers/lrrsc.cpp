#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <cmath>

#include "subclust/solvers.hpp"

namespace subclust {
namespace {

double l21_norm(const Matrix& m) { return m.colwise().norm().sum(); }

double nuclear_norm(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

}  // namespace

CoefficientMatrix solve_lrrsc(const DataMatrix& data, const SolverConfig& cfg) {
  cfg.validate(SolverKind::lrrsc);
  const Matrix& x = data.values();
  const Matrix& dict = cfg.dictionary ? *cfg.dictionary : x;
  if (dict.rows() != x.rows() || dict.cols() != x.cols()) {
    throw ConfigError("LRRSC: dictionary must have the shape of the data matrix");
  }
  const Index d = x.rows();
  const Index n = x.cols();
  const double x_scale = std::max(x.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());

  Matrix normal = dict.transpose() * dict;
  normal.diagonal().array() += 1.0;
  Eigen::LLT<Matrix> llt(normal);
  if (llt.info() != Eigen::Success) throw NumericalError("LRRSC: Cholesky factorization failed");

  // Inexact ALM on  min ||J||_* + lambda ||E||_{2,1}
  //                 s.t. X = AC + E,  C = J,  J = J^T.
  Matrix c = Matrix::Zero(n, n);
  Matrix j = Matrix::Zero(n, n);
  Matrix e = Matrix::Zero(d, n);
  Matrix y_fit = Matrix::Zero(d, n);
  Matrix y_c = Matrix::Zero(n, n);
  double mu = cfg.penalty_init.value_or(1e-6);

  SolverReport report;
  double residual = std::numeric_limits<double>::infinity();
  int it = 0;
  while (it < cfg.max_iter) {
    ++it;
    j = singular_value_threshold(c + y_c / mu, 1.0 / mu);
    j = 0.5 * (j + j.transpose()).eval();

    c = llt.solve(dict.transpose() * (x - e) + j + (dict.transpose() * y_fit - y_c) / mu);
    e = column_shrink(x - dict * c + y_fit / mu, cfg.lambda / mu);

    const Matrix r_fit = x - dict * c - e;
    const Matrix r_c = c - j;
    y_fit += mu * r_fit;
    y_c += mu * r_c;
    mu = std::min(mu * cfg.penalty_growth, cfg.penalty_max);

    // Convergence is judged on the symmetrized iterate that is returned.
    const Matrix c_sym = 0.5 * (c + c.transpose());
    const double res_fit = (x - dict * c_sym - e).cwiseAbs().maxCoeff() / x_scale;
    const double res_c = r_c.cwiseAbs().maxCoeff();
    residual = std::max(res_fit, res_c);
    if (!std::isfinite(residual)) throw NumericalError("LRRSC: iteration diverged");
    if (residual <= cfg.tol) break;
  }

  c = 0.5 * (c + c.transpose()).eval();
  report.iterations = it;
  report.primal_residual = residual;
  report.converged = residual <= cfg.tol;
  report.error_l21 = l21_norm(e);
  report.objective = nuclear_norm(c) + cfg.lambda * *report.error_l21;
  return {std::move(c), SolverKind::lrrsc, std::move(report), std::move(e)};
}

}  // namespace subclust
