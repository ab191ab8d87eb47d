#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "subclust/harness.hpp"

using namespace subclust;
namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kData = 2, kNumerical = 3 };

FileFormat format_for(const fs::path& path, const std::string& explicit_format) {
  if (!explicit_format.empty()) return parse_file_format(explicit_format);
  return path.extension() == ".bin" ? FileFormat::binary : FileFormat::csv;
}

fs::path default_labels_path(const fs::path& matrix) {
  fs::path p = matrix;
  p.replace_extension(".labels.txt");
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string result_csv(const ExperimentConfig& cfg, const ExperimentResult& r) {
  std::string out = "solver,affinity,trials,mean,std,max,min,converged_fraction,wall_time_s\n";
  out += std::string(to_string(cfg.solver)) + ',' + std::string(to_string(cfg.affinity)) + ',' +
         std::to_string(r.per_trial.size()) + ',' + fixed(r.mean, 4) + ',' + fixed(r.std, 4) + ',' +
         fixed(r.max, 4) + ',' + fixed(r.min, 4) + ',' + fixed(r.solver_converged_fraction, 4) +
         ',' + fixed(r.wall_time_s, 3) + '\n';
  return out;
}

struct SynthArgs {
  SyntheticSpec spec;
  std::string out;
  std::string labels_out;
  std::string format;
};

int cmd_synth(const SynthArgs& a) {
  const Dataset ds = generate_synthetic(a.spec);
  const fs::path out(a.out);
  const fs::path labels = a.labels_out.empty() ? default_labels_path(out) : fs::path(a.labels_out);
  save_dataset(ds, out, labels, format_for(out, a.format));
  std::cout << "wrote " << ds.matrix.samples() << " samples (d=" << ds.matrix.features() << ", "
            << ds.truth.clusters() << " subspaces) to " << out.string() << " and "
            << labels.string() << '\n';
  return kOk;
}

struct RunArgs {
  std::string config;
  std::string out;
  std::string dump_coeff;
  std::string dump_affinity;
  std::string labels_out;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  bool resolve_per_trial = false;
};

int cmd_run(const RunArgs& a) {
  ExperimentConfig cfg = load_experiment_config(a.config);
  if (a.trials) cfg.trials = *a.trials;
  if (a.seed) cfg.master_seed = *a.seed;
  if (a.resolve_per_trial) cfg.resolve_per_trial = true;
  cfg.validate();

  ExperimentArtifacts artifacts{Dataset(DataMatrix(Matrix::Ones(1, 2)), LabelVector({0, 1}, 2)),
                                {}, {}};
  const ExperimentResult r = run_experiment(cfg, &artifacts);

  std::cout << to_string(cfg.solver) << " + " << to_string(cfg.affinity) << ": mean "
            << fixed(r.mean, 2) << "  std " << fixed(r.std, 2) << "  max " << fixed(r.max, 2)
            << "  min " << fixed(r.min, 2) << "  (" << r.per_trial.size() << " trials, "
            << fixed(r.wall_time_s, 2) << " s)\n";
  if (r.solver_converged_fraction < 1.0) {
    std::cerr << "warning: solver did not reach tolerance within max_iter\n";
  }

  if (!a.out.empty()) write_text(a.out, result_csv(cfg, r));
  if (!a.dump_coeff.empty()) {
    write_matrix(a.dump_coeff, artifacts.coefficients.values, format_for(a.dump_coeff, ""));
  }
  if (!a.dump_affinity.empty()) {
    write_matrix(a.dump_affinity, artifacts.affinity.values, format_for(a.dump_affinity, ""));
  }
  if (!a.labels_out.empty()) {
    SpectralConfig spectral;
    spectral.n_clusters = cfg.n_clusters.value_or(artifacts.dataset.truth.clusters());
    spectral.seed = trial_seed(cfg.master_seed, 0);
    spectral.kmeans_restarts = cfg.kmeans_restarts;
    spectral.kmeans_max_iter = cfg.kmeans_max_iter;
    spectral.laplacian = cfg.laplacian;
    write_labels(a.labels_out, cluster(artifacts.affinity, spectral).labels);
  }
  return kOk;
}

struct GridArgs {
  std::string dataset;
  std::string labels;
  std::string format;
  std::optional<Index> pca;
  bool no_normalize = false;
  std::string preset;
  std::string presets_file;
  int trials = 20;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_grid(const GridArgs& a) {
  PresetTable table = PresetTable::defaults();
  if (!a.presets_file.empty()) {
    const auto loaded = load_presets(a.presets_file);
    if (a.preset.empty()) {
      if (loaded.size() != 1) throw ConfigError("--presets file holds several tables; pick one with --preset");
      table = loaded.begin()->second;
    } else {
      const auto it = loaded.find(a.preset);
      if (it == loaded.end()) throw ConfigError("preset '" + a.preset + "' not found in " + a.presets_file);
      table = it->second;
    }
  } else if (!a.preset.empty()) {
    table = builtin_preset(a.preset);
  }

  Preprocessing steps = table.preprocessing();
  if (a.pca) steps.pca_dim = *a.pca;
  if (a.no_normalize) steps.normalize = false;

  const fs::path matrix(a.dataset);
  Dataset ds = preprocess(load_dataset(matrix, a.labels, format_for(matrix, a.format)), steps);
  ds.name = a.preset.empty() ? matrix.stem().string() : a.preset;

  TrialOptions opts;
  opts.trials = a.trials;
  opts.master_seed = a.seed;
  const GridResult grid = run_grid(ds, table, opts);
  std::cout << emit_table(grid, TableFormat::console);
  if (!a.out.empty()) write_text(a.out, emit_table(grid, TableFormat::csv));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subspace clustering: self-representation solvers, affinity builders, spectral clustering"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a union-of-subspaces dataset");
  s->add_option("--subspaces", synth.spec.num_subspaces, "Number of subspaces")->capture_default_str();
  s->add_option("--dim", synth.spec.subspace_dim, "Dimension of each subspace")->capture_default_str();
  s->add_option("--ambient", synth.spec.ambient_dim, "Ambient dimension")->capture_default_str();
  s->add_option("--points", synth.spec.points_per_subspace, "Points per subspace")->capture_default_str();
  s->add_option("--noise", synth.spec.noise_sigma, "Gaussian noise std")->capture_default_str();
  s->add_option("--seed", synth.spec.seed, "Random seed")->capture_default_str();
  s->add_flag("!--dependent", synth.spec.independent, "Allow ambient < subspaces * dim");
  s->add_option("--out", synth.out, "Matrix output (.bin for binary, otherwise CSV)")->required();
  s->add_option("--labels-out", synth.labels_out, "Labels output (default <out stem>.labels.txt)");
  s->add_option("--format", synth.format, "csv or binary (overrides the extension)");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run one solver/affinity experiment from a JSON config");
  r->add_option("--config", run.config, "Experiment config (JSON)")->required();
  r->add_option("--out", run.out, "Summary CSV");
  r->add_option("--dump-coeff", run.dump_coeff, "Write the coefficient matrix C");
  r->add_option("--dump-affinity", run.dump_affinity, "Write the affinity matrix W");
  r->add_option("--labels-out", run.labels_out, "Write predicted labels of the first trial");
  r->add_option("--trials", run.trials, "Override the number of trials");
  r->add_option("--seed", run.seed, "Override the master seed");
  r->add_flag("--resolve-per-trial", run.resolve_per_trial, "Recompute C and W in every trial");

  GridArgs grid;
  auto* g = app.add_subcommand("grid", "All 16 solver/affinity combinations on one dataset");
  g->add_option("--dataset", grid.dataset, "Data matrix file")->required();
  g->add_option("--labels", grid.labels, "Ground-truth labels file")->required();
  g->add_option("--format", grid.format, "csv or binary (default from the extension)");
  g->add_option("--pca", grid.pca, "PCA target dimension (overrides the preset)");
  g->add_flag("--no-normalize", grid.no_normalize, "Skip unit-norm column scaling");
  g->add_option("--preset", grid.preset, "Parameter table: yaleb, ar or usps");
  g->add_option("--presets", grid.presets_file, "Custom presets JSON instead of the built-in tables");
  g->add_option("--trials", grid.trials, "Trials per cell")->capture_default_str();
  g->add_option("--seed", grid.seed, "Master seed")->capture_default_str();
  g->add_option("--out", grid.out, "Result table CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*s) return cmd_synth(synth);
    if (*r) return cmd_run(run);
    if (*g) return cmd_grid(grid);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
