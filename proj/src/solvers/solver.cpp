#include <cmath>

#include "subclust/solvers.hpp"

namespace subclust {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::ssc: return "ssc";
    case SolverKind::lsr: return "lsr";
    case SolverKind::smr: return "smr";
    case SolverKind::lrrsc: return "lrrsc";
  }
  return "?";
}

SolverKind parse_solver_kind(std::string_view text) {
  if (text == "ssc") return SolverKind::ssc;
  if (text == "lsr") return SolverKind::lsr;
  if (text == "smr") return SolverKind::smr;
  if (text == "lrrsc") return SolverKind::lrrsc;
  throw ConfigError("unknown solver '" + std::string(text) + "' (expected ssc, lsr, smr, lrrsc)");
}

SolverConfig SolverConfig::defaults(SolverKind kind) {
  SolverConfig cfg;
  switch (kind) {
    case SolverKind::ssc:
      cfg.lambda = 20.0;
      cfg.tol = 2e-4;
      cfg.max_iter = 200;
      break;
    case SolverKind::lsr:
      cfg.lambda = 0.01;
      break;
    case SolverKind::smr:
      cfg.lambda = 1.0;
      cfg.k_graph = 4;
      cfg.epsilon = 0.01;
      break;
    case SolverKind::lrrsc:
      cfg.lambda = 1.0;
      cfg.tol = 1e-6;
      cfg.max_iter = 1000;
      cfg.penalty_init = 1e-6;
      cfg.penalty_growth = 1.1;
      cfg.penalty_max = 1e10;
      break;
  }
  return cfg;
}

void SolverConfig::validate(SolverKind kind) const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string(name) + " must be positive and finite");
    }
  };
  positive(lambda, "lambda");
  positive(tol, "tol");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (penalty_init) positive(*penalty_init, "penalty_init");
  if (!(penalty_growth > 1.0)) throw ConfigError("penalty_growth must be > 1");
  positive(penalty_max, "penalty_max");
  if (kind == SolverKind::smr) {
    positive(epsilon, "epsilon");
    if (k_graph < 1) throw ConfigError("k_graph must be >= 1");
  }
  if (!(lambda_z >= 0.0)) throw ConfigError("lambda_z must be nonnegative");
}

CoefficientMatrix solve(SolverKind kind, const DataMatrix& x, const SolverConfig& cfg) {
  switch (kind) {
    case SolverKind::ssc: return solve_ssc(x, cfg);
    case SolverKind::lsr: return solve_lsr(x, cfg);
    case SolverKind::smr: return solve_smr(x, cfg);
    case SolverKind::lrrsc: return solve_lrrsc(x, cfg);
  }
  throw ConfigError("unknown solver");
}

}  // namespace subclust
