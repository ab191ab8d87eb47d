#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "subclust/affinity.hpp"
#include "subclust/solvers.hpp"
#include "subclust/spectral.hpp"

namespace subclust {

struct FileSource {
  std::filesystem::path matrix;
  std::filesystem::path labels;
  FileFormat format = FileFormat::csv;
};

using DatasetSource = std::variant<FileSource, SyntheticSpec>;

struct ExperimentConfig {
  DatasetSource dataset = SyntheticSpec{};
  Preprocessing preprocessing;
  SolverKind solver = SolverKind::lrrsc;
  SolverConfig solver_cfg = SolverConfig::defaults(SolverKind::lrrsc);
  AffinityKind affinity = AffinityKind::sm;
  AffinityConfig affinity_cfg;
  /// Unset: number of distinct ground-truth labels.
  std::optional<int> n_clusters;
  int trials = 20;
  std::uint64_t master_seed = 0;
  LaplacianKind laplacian = LaplacianKind::symmetric_normalized;
  int kmeans_restarts = 10;
  int kmeans_max_iter = 100;
  /// Recompute C and W in every trial instead of once.
  bool resolve_per_trial = false;

  void validate() const;
};

/// Reads an ExperimentConfig from a JSON document whose keys mirror the
/// struct fields. Unknown keys raise ConfigError.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ExperimentResult {
  double mean = 0.0;
  /// Sample standard deviation (n - 1 denominator; 0 for a single trial).
  double std = 0.0;
  double max = 0.0;
  double min = 0.0;
  std::vector<double> per_trial;
  double wall_time_s = 0.0;
  double solver_converged_fraction = 0.0;
};

/// Mean / sample std / max / min of per-trial accuracies.
ExperimentResult summarize(std::vector<double> per_trial);

/// Seed of trial `trial` derived from the master seed (SplitMix64 mixing).
std::uint64_t trial_seed(std::uint64_t master_seed, int trial);

Dataset materialize_dataset(const DatasetSource& source);

/// Loads/generates and preprocesses the dataset, solves once, builds the
/// affinity once, then clusters `trials` times with per-trial k-means seeds.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Intermediate products of a single run, for --dump-coeff / --dump-affinity.
struct ExperimentArtifacts {
  Dataset dataset;
  CoefficientMatrix coefficients;
  AffinityMatrix affinity;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg, ExperimentArtifacts* artifacts);

/// Options shared by every cell of a grid run.
struct TrialOptions {
  int trials = 20;
  std::uint64_t master_seed = 0;
  std::optional<int> n_clusters;
  LaplacianKind laplacian = LaplacianKind::symmetric_normalized;
  int kmeans_restarts = 10;
  int kmeans_max_iter = 100;
};

/// Clusters an already-built affinity `opts.trials` times.
ExperimentResult run_trials(const AffinityMatrix& w, const LabelVector& truth,
                            const TrialOptions& opts);

constexpr std::array<SolverKind, 4> kTableSolvers = {SolverKind::lsr, SolverKind::smr,
                                                     SolverKind::lrrsc, SolverKind::ssc};
constexpr std::array<AffinityKind, 4> kTableAffinities = {AffinityKind::sm, AffinityKind::ssm,
                                                          AffinityKind::svdm, AffinityKind::ipm};

/// Parameters of one (solver, affinity) combination.
struct PresetCell {
  SolverConfig solver;
  AffinityConfig affinity;
};

/// (solver, affinity) -> parameters for one dataset.
class PresetTable {
 public:
  PresetTable() = default;
  explicit PresetTable(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  const Preprocessing& preprocessing() const noexcept { return preprocessing_; }
  void set_preprocessing(Preprocessing p) { preprocessing_ = p; }
  const PresetCell& at(SolverKind s, AffinityKind a) const;
  void set(SolverKind s, AffinityKind a, PresetCell cell);
  bool complete() const noexcept { return cells_.size() == 16; }

  /// Library defaults for every cell.
  static PresetTable defaults();

 private:
  std::string name_ = "default";
  Preprocessing preprocessing_;
  std::map<std::pair<SolverKind, AffinityKind>, PresetCell> cells_;
};

/// Parses a presets document:
///   {"datasets": {NAME: {"preprocessing": {...},
///                        "solvers": {SOLVER: {"lambda": .., ...,
///                                             "affinity": {AFF: {"k_top": .., "alpha": ..}}}}}}}
/// Every dataset must cover all 16 cells.
std::map<std::string, PresetTable> parse_presets(std::string_view json_text);
std::map<std::string, PresetTable> load_presets(const std::filesystem::path& path);

/// The parameter tables for "yaleb", "ar" and "usps", compiled in.
const std::map<std::string, PresetTable>& builtin_presets();

/// Looks up a built-in preset by name; ConfigError if unknown.
const PresetTable& builtin_preset(std::string_view name);

struct GridCell {
  std::optional<ExperimentResult> result;
  std::string error;
};

struct GridResult {
  /// cells[affinity][solver], indices following kTableAffinities / kTableSolvers.
  std::array<std::array<GridCell, 4>, 4> cells;
  std::string dataset_name;
};

/// All 16 combinations on a prepared dataset. Each solver runs once per
/// distinct solver configuration; a failing cell records its error and the
/// grid still completes.
GridResult run_grid(const Dataset& ds, const PresetTable& presets, const TrialOptions& opts);

enum class TableFormat { console, csv };

/// Rows grouped by affinity then Mean/STD/Max/Min; columns LSR, SMR, LRRSC,
/// SSC; two decimals; failed cells as "ERR".
std::string emit_table(const GridResult& grid, TableFormat format);

}  // namespace subclust
