#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "subclust/data_model.hpp"

namespace subclust {

enum class SolverKind { ssc, lsr, smr, lrrsc };

std::string_view to_string(SolverKind kind);
SolverKind parse_solver_kind(std::string_view text);

struct SolverReport {
  int iterations = 0;
  /// Max-norm of the equality-constraint violation at exit.
  double primal_residual = 0.0;
  double objective = 0.0;
  bool converged = false;
  /// Per-iteration objective, for the iterative solvers.
  std::vector<double> objective_trace;
  /// SSC exit diagnostics: ||E||_1 and ||Z||_F (Z is zero in the Z-free variant).
  std::optional<double> error_l1;
  std::optional<double> noise_fro;
  /// LRRSC exit diagnostic: ||E||_{2,1}.
  std::optional<double> error_l21;
};

struct SolverConfig {
  /// Trade-off weight: SSC outlier weight before mu-scaling, LSR ridge
  /// weight, SMR fidelity weight, LRRSC error weight.
  double lambda = 1.0;
  double tol = 1e-4;
  int max_iter = 200;
  /// Augmented-Lagrangian penalty. SSC: unset means lambda. LRRSC: mu_0.
  std::optional<double> penalty_init;
  double penalty_growth = 1.1;
  double penalty_max = 1e10;

  /// LSR: enforce diag(C) = 0.
  bool diag_constraint = false;

  /// SMR graph: k nearest neighbours and the ridge epsilon in L + eps I.
  int k_graph = 4;
  double epsilon = 0.01;

  /// SSC: weight of the dense noise term (lambda_z / 2)||Z||_F^2, also
  /// mu-scaled. Zero selects the Z-free variant.
  double lambda_z = 0.0;

  /// LRRSC: dictionary A in X = AC + E. Unset means A = X.
  std::optional<Matrix> dictionary;

  /// Defaults for a solver: lambda, tolerances, iteration caps and penalty
  /// schedules tuned for unit-norm columns.
  static SolverConfig defaults(SolverKind kind);

  /// Throws ConfigError on non-positive weights, growth <= 1 and the like.
  void validate(SolverKind kind) const;
};

struct CoefficientMatrix {
  Matrix values;
  SolverKind solver;
  SolverReport report;
  /// Residual term at exit: E + Z for SSC, E for LRRSC, empty otherwise.
  Matrix error;
};

struct GraphLaplacian {
  /// L + eps I.
  Matrix l_hat;
  /// Symmetrized 0/1 kNN adjacency.
  Matrix w_graph;
  Vector degree;
};

double soft_threshold(double v, double tau);
Matrix soft_threshold(const Matrix& v, double tau);

/// U * soft_threshold(Sigma, tau) * V^T.
Matrix singular_value_threshold(const Matrix& m, double tau);

/// Column-wise shrinkage, the proximal map of tau * ||.||_{2,1}.
Matrix column_shrink(const Matrix& m, double tau);

/// kNN graph Laplacian used by SMR: edge i~j if either lists the other among
/// its k_graph nearest neighbours, unit weights.
GraphLaplacian build_knn_laplacian(const DataMatrix& x, int k_graph, double epsilon);

/// min ||X - XC||_F^2 + lambda ||C||_F^2, closed form; optional diag(C) = 0.
CoefficientMatrix solve_lsr(const DataMatrix& x, const SolverConfig& cfg);

/// min ||C||_1 + lambda_e ||E||_1 + (lambda_z/2)||Z||_F^2
///   s.t. X = XC + E + Z, diag(C) = 0    (ADMM).
CoefficientMatrix solve_ssc(const DataMatrix& x, const SolverConfig& cfg);

/// min lambda ||X - XC||_F^2 + tr(C L_hat C^T), exact Sylvester solve.
CoefficientMatrix solve_smr(const DataMatrix& x, const SolverConfig& cfg);

/// min ||C||_* + lambda ||E||_{2,1} s.t. X = AC + E, C = C^T (inexact ALM).
CoefficientMatrix solve_lrrsc(const DataMatrix& x, const SolverConfig& cfg);

CoefficientMatrix solve(SolverKind kind, const DataMatrix& x, const SolverConfig& cfg);

/// SSC objective on a candidate C with E eliminated: ||C||_1 + lambda_e ||X - XC||_1.
double ssc_feasible_objective(const Matrix& x, const Matrix& c, double lambda_e);

/// mu = min_i max_{j != i} |x_i^T x_j|, the scale used to turn SSC's lambda
/// into lambda_e = lambda / mu.
double ssc_incoherence_scale(const Matrix& x);

/// SMR objective lambda ||X - XC||_F^2 + tr(C L_hat C^T).
double smr_objective(const Matrix& x, const Matrix& c, const Matrix& l_hat, double lambda);

}  // namespace subclust
