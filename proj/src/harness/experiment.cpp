#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>

#include "subclust/harness.hpp"

namespace subclust {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Solver configs that would produce the same C (the LRRSC dictionary hook is
// compared by identity of presence only; presets never set it).
bool same_solver_config(const SolverConfig& a, const SolverConfig& b) {
  return a.lambda == b.lambda && a.tol == b.tol && a.max_iter == b.max_iter &&
         a.penalty_init == b.penalty_init && a.penalty_growth == b.penalty_growth &&
         a.penalty_max == b.penalty_max && a.diag_constraint == b.diag_constraint &&
         a.k_graph == b.k_graph && a.epsilon == b.epsilon && a.lambda_z == b.lambda_z &&
         !a.dictionary && !b.dictionary;
}

TrialOptions trial_options(const ExperimentConfig& cfg) {
  return {cfg.trials,          cfg.master_seed,     cfg.n_clusters,
          cfg.laplacian,       cfg.kmeans_restarts, cfg.kmeans_max_iter};
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, int trial) {
  std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ExperimentResult summarize(std::vector<double> per_trial) {
  if (per_trial.empty()) throw ConfigError("summarize: no trials");
  ExperimentResult r;
  const double n = static_cast<double>(per_trial.size());
  r.mean = std::accumulate(per_trial.begin(), per_trial.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : per_trial) ss += (v - r.mean) * (v - r.mean);
  r.std = per_trial.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  const auto [lo, hi] = std::minmax_element(per_trial.begin(), per_trial.end());
  r.min = *lo;
  r.max = *hi;
  r.per_trial = std::move(per_trial);
  return r;
}

Dataset materialize_dataset(const DatasetSource& source) {
  if (const auto* spec = std::get_if<SyntheticSpec>(&source)) return generate_synthetic(*spec);
  const auto& file = std::get<FileSource>(source);
  return load_dataset(file.matrix, file.labels, file.format);
}

ExperimentResult run_trials(const AffinityMatrix& w, const LabelVector& truth,
                            const TrialOptions& opts) {
  if (opts.trials < 1) throw ConfigError("trials must be >= 1");
  SpectralConfig spectral;
  spectral.n_clusters = opts.n_clusters.value_or(truth.clusters());
  spectral.kmeans_restarts = opts.kmeans_restarts;
  spectral.kmeans_max_iter = opts.kmeans_max_iter;
  spectral.laplacian = opts.laplacian;
  // The embedding is deterministic; only k-means seeding varies per trial.
  const Matrix embedding = spectral_embed(w, spectral);

  std::vector<double> accuracy(std::size_t(opts.trials), 0.0);
  std::vector<std::exception_ptr> errors(std::size_t(opts.trials));
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < opts.trials; ++t) {
    try {
      const auto km = kmeans(embedding, spectral.n_clusters, trial_seed(opts.master_seed, t),
                             spectral.kmeans_restarts, spectral.kmeans_max_iter);
      accuracy[std::size_t(t)] = clustering_accuracy(km.labels, truth);
    } catch (...) {
      errors[std::size_t(t)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return summarize(std::move(accuracy));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) { return run_experiment(cfg, nullptr); }

ExperimentResult run_experiment(const ExperimentConfig& cfg, ExperimentArtifacts* artifacts) {
  cfg.validate();
  const auto start = Clock::now();
  const Dataset ds = preprocess(materialize_dataset(cfg.dataset), cfg.preprocessing);
  const TrialOptions opts = trial_options(cfg);

  ExperimentResult result;
  if (!cfg.resolve_per_trial) {
    CoefficientMatrix c = solve(cfg.solver, ds.matrix, cfg.solver_cfg);
    AffinityMatrix w = build_affinity(cfg.affinity, c.values, ds.matrix, cfg.affinity_cfg);
    check_affinity(w);
    result = run_trials(w, ds.truth, opts);
    result.solver_converged_fraction = c.report.converged ? 1.0 : 0.0;
    if (artifacts) *artifacts = ExperimentArtifacts{ds, std::move(c), std::move(w)};
  } else {
    // Escape hatch: every trial re-solves. Solvers are deterministic, so this
    // only changes the cost, not the numbers.
    std::vector<double> per_trial;
    int converged = 0;
    for (int t = 0; t < cfg.trials; ++t) {
      CoefficientMatrix c = solve(cfg.solver, ds.matrix, cfg.solver_cfg);
      AffinityMatrix w = build_affinity(cfg.affinity, c.values, ds.matrix, cfg.affinity_cfg);
      check_affinity(w);
      SpectralConfig spectral;
      spectral.n_clusters = opts.n_clusters.value_or(ds.truth.clusters());
      spectral.seed = trial_seed(cfg.master_seed, t);
      spectral.kmeans_restarts = opts.kmeans_restarts;
      spectral.kmeans_max_iter = opts.kmeans_max_iter;
      spectral.laplacian = opts.laplacian;
      per_trial.push_back(*cluster(w, spectral, &ds.truth).accuracy_percent);
      converged += c.report.converged ? 1 : 0;
      if (artifacts && t + 1 == cfg.trials) {
        *artifacts = ExperimentArtifacts{ds, std::move(c), std::move(w)};
      }
    }
    result = summarize(std::move(per_trial));
    result.solver_converged_fraction = double(converged) / double(cfg.trials);
  }
  result.wall_time_s = seconds_since(start);
  return result;
}

GridResult run_grid(const Dataset& ds, const PresetTable& presets, const TrialOptions& opts) {
  GridResult grid;
  grid.dataset_name = ds.name;
  for (std::size_t si = 0; si < kTableSolvers.size(); ++si) {
    const SolverKind solver = kTableSolvers[si];
    // Coefficient matrices are reused across affinities sharing a solver config.
    std::vector<std::pair<SolverConfig, CoefficientMatrix>> solved;
    std::vector<std::pair<SolverConfig, std::string>> failed;
    std::vector<double> solve_seconds;

    for (std::size_t ai = 0; ai < kTableAffinities.size(); ++ai) {
      const AffinityKind affinity = kTableAffinities[ai];
      GridCell& cell = grid.cells[ai][si];
      const auto start = Clock::now();
      try {
        const PresetCell& params = presets.at(solver, affinity);
        const CoefficientMatrix* coeff = nullptr;
        double solve_time = 0.0;
        for (std::size_t i = 0; i < solved.size(); ++i) {
          if (same_solver_config(solved[i].first, params.solver)) {
            coeff = &solved[i].second;
            solve_time = solve_seconds[i];
          }
        }
        for (const auto& [scfg, message] : failed) {
          if (same_solver_config(scfg, params.solver)) throw Error(message);
        }
        if (!coeff) {
          const auto solve_start = Clock::now();
          try {
            solved.emplace_back(params.solver, solve(solver, ds.matrix, params.solver));
          } catch (const std::exception& e) {
            failed.emplace_back(params.solver, e.what());
            throw;
          }
          solve_seconds.push_back(seconds_since(solve_start));
          coeff = &solved.back().second;
        }
        const AffinityMatrix w = build_affinity(affinity, coeff->values, ds.matrix, params.affinity);
        check_affinity(w);
        ExperimentResult r = run_trials(w, ds.truth, opts);
        r.solver_converged_fraction = coeff->report.converged ? 1.0 : 0.0;
        r.wall_time_s = seconds_since(start) + solve_time;
        cell.result = std::move(r);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  }
  return grid;
}

}  // namespace subclust
