#include <fstream>
#include <sstream>

#include "json_fields.hpp"
#include "subclust/harness.hpp"

namespace subclust {
namespace detail {

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

void read_solver_fields(Fields& f, SolverConfig& cfg) {
  f.get("lambda", cfg.lambda);
  f.get("tol", cfg.tol);
  f.get("max_iter", cfg.max_iter);
  if (f.has("penalty_init")) {
    const json& v = f.raw("penalty_init");
    if (v.is_null()) {
      cfg.penalty_init.reset();
    } else if (v.is_number()) {
      cfg.penalty_init = v.get<double>();
    } else {
      throw ConfigError(f.context() + ".penalty_init: expected a number or null");
    }
  }
  f.get("penalty_growth", cfg.penalty_growth);
  f.get("penalty_max", cfg.penalty_max);
  f.get("diag_constraint", cfg.diag_constraint);
  f.get("k_graph", cfg.k_graph);
  f.get("epsilon", cfg.epsilon);
  f.get("lambda_z", cfg.lambda_z);
}

void read_affinity_fields(Fields& f, AffinityConfig& cfg) {
  f.get("k_top", cfg.k_top);
  f.get("alpha", cfg.alpha);
  f.get("rank_threshold", cfg.rank_threshold);
  std::string text;
  if (f.get("side", text)) {
    if (text == "rows_m") {
      cfg.side = SvdSide::rows_m;
    } else if (text == "cols_n") {
      cfg.side = SvdSide::cols_n;
    } else {
      throw ConfigError(f.context() + ".side: expected rows_m or cols_n");
    }
  }
  if (f.get("ipm_denominator", text)) {
    if (text == "data_norms") {
      cfg.ipm_denominator = IpmDenominator::data_norms;
    } else if (text == "coeff_norms") {
      cfg.ipm_denominator = IpmDenominator::coeff_norms;
    } else {
      throw ConfigError(f.context() + ".ipm_denominator: expected data_norms or coeff_norms");
    }
  }
  f.get("zero_diagonal", cfg.zero_diagonal);
}

void read_preprocessing(const json& obj, const std::string& context, Preprocessing& out) {
  Fields f(obj, context);
  if (f.has("pca_dim")) {
    const json& v = f.raw("pca_dim");
    if (v.is_null()) {
      out.pca_dim.reset();
    } else if (v.is_number_integer()) {
      out.pca_dim = v.get<Index>();
    } else {
      throw ConfigError(context + ".pca_dim: expected an integer or null");
    }
  }
  f.get("normalize", out.normalize);
  f.finish();
}

}  // namespace detail

namespace {

using detail::Fields;
using detail::json;

DatasetSource read_dataset(const json& obj) {
  Fields f(obj, "dataset");
  if (f.has("synthetic")) {
    SyntheticSpec spec;
    Fields s(f.raw("synthetic"), "dataset.synthetic");
    s.get("num_subspaces", spec.num_subspaces);
    s.get("subspace_dim", spec.subspace_dim);
    s.get("ambient_dim", spec.ambient_dim);
    s.get("points_per_subspace", spec.points_per_subspace);
    s.get("noise_sigma", spec.noise_sigma);
    s.get("seed", spec.seed);
    s.get("independent", spec.independent);
    s.finish();
    f.finish();
    return spec;
  }
  FileSource src;
  std::string text;
  if (!f.get("matrix", text)) throw ConfigError("dataset: needs 'matrix' or 'synthetic'");
  src.matrix = text;
  if (!f.get("labels", text)) throw ConfigError("dataset: needs 'labels'");
  src.labels = text;
  if (f.get("format", text)) src.format = parse_file_format(text);
  f.finish();
  return src;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (n_clusters && *n_clusters < 2) throw ConfigError("n_clusters must be >= 2");
  if (kmeans_restarts < 1) throw ConfigError("kmeans_restarts must be >= 1");
  if (kmeans_max_iter < 1) throw ConfigError("kmeans_max_iter must be >= 1");
  solver_cfg.validate(solver);
  if (const auto* spec = std::get_if<SyntheticSpec>(&dataset)) spec->validate();
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  const json doc = detail::parse_json(json_text, "experiment config");
  Fields top(doc, "config");
  ExperimentConfig cfg;

  if (!top.has("dataset")) throw ConfigError("config: missing 'dataset'");
  cfg.dataset = read_dataset(top.raw("dataset"));

  if (top.has("preprocessing")) {
    detail::read_preprocessing(top.raw("preprocessing"), "preprocessing", cfg.preprocessing);
  }

  if (!top.has("solver")) throw ConfigError("config: missing 'solver'");
  {
    Fields f(top.raw("solver"), "solver");
    std::string kind;
    if (!f.get("kind", kind)) throw ConfigError("solver: missing 'kind'");
    cfg.solver = parse_solver_kind(kind);
    cfg.solver_cfg = SolverConfig::defaults(cfg.solver);
    detail::read_solver_fields(f, cfg.solver_cfg);
    f.finish();
  }

  if (!top.has("affinity")) throw ConfigError("config: missing 'affinity'");
  {
    Fields f(top.raw("affinity"), "affinity");
    std::string kind;
    if (!f.get("kind", kind)) throw ConfigError("affinity: missing 'kind'");
    cfg.affinity = parse_affinity_kind(kind);
    detail::read_affinity_fields(f, cfg.affinity_cfg);
    f.finish();
  }

  int n_clusters = 0;
  if (top.get("n_clusters", n_clusters)) cfg.n_clusters = n_clusters;
  top.get("trials", cfg.trials);
  top.get("master_seed", cfg.master_seed);
  top.get("resolve_per_trial", cfg.resolve_per_trial);

  if (top.has("spectral")) {
    Fields f(top.raw("spectral"), "spectral");
    std::string lap;
    if (f.get("laplacian", lap)) cfg.laplacian = parse_laplacian_kind(lap);
    f.get("kmeans_restarts", cfg.kmeans_restarts);
    f.get("kmeans_max_iter", cfg.kmeans_max_iter);
    f.finish();
  }
  top.finish();
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg = parse_experiment_config(buf.str());
  // Dataset paths are relative to the config file.
  if (auto* src = std::get_if<FileSource>(&cfg.dataset)) {
    const auto base = path.parent_path();
    if (src->matrix.is_relative()) src->matrix = base / src->matrix;
    if (src->labels.is_relative()) src->labels = base / src->labels;
  }
  return cfg;
}

}  // namespace subclust
