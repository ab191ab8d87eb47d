#include <fstream>
#include <sstream>

#include "json_fields.hpp"
#include "subclust/harness.hpp"

namespace subclust {
namespace detail {
extern const std::string_view kBuiltinPresetsJson;
}  // namespace detail

const PresetCell& PresetTable::at(SolverKind s, AffinityKind a) const {
  const auto it = cells_.find({s, a});
  if (it == cells_.end()) {
    throw ConfigError("preset '" + name_ + "' has no entry for " + std::string(to_string(s)) +
                      "+" + std::string(to_string(a)));
  }
  return it->second;
}

void PresetTable::set(SolverKind s, AffinityKind a, PresetCell cell) {
  cells_.insert_or_assign({s, a}, std::move(cell));
}

PresetTable PresetTable::defaults() {
  PresetTable table("default");
  for (auto s : kTableSolvers) {
    for (auto a : kTableAffinities) table.set(s, a, {SolverConfig::defaults(s), AffinityConfig{}});
  }
  return table;
}

std::map<std::string, PresetTable> parse_presets(std::string_view json_text) {
  using detail::Fields;
  const auto doc = detail::parse_json(json_text, "presets");
  Fields top(doc, "presets");
  if (!top.has("datasets")) throw ConfigError("presets: missing 'datasets'");
  std::map<std::string, PresetTable> out;
  for (const auto& [name, body] : top.raw("datasets").items()) {
    const std::string ctx = "presets." + name;
    Fields ds(body, ctx);
    PresetTable table(name);
    if (ds.has("preprocessing")) {
      Preprocessing pre;
      detail::read_preprocessing(ds.raw("preprocessing"), ctx + ".preprocessing", pre);
      table.set_preprocessing(pre);
    }
    if (!ds.has("solvers")) throw ConfigError(ctx + ": missing 'solvers'");
    for (const auto& [solver_name, solver_body] : ds.raw("solvers").items()) {
      const SolverKind kind = parse_solver_kind(solver_name);
      Fields sf(solver_body, ctx + "." + solver_name);
      SolverConfig scfg = SolverConfig::defaults(kind);
      detail::read_solver_fields(sf, scfg);
      scfg.validate(kind);
      if (!sf.has("affinity")) throw ConfigError(sf.context() + ": missing 'affinity'");
      for (const auto& [aff_name, aff_body] : sf.raw("affinity").items()) {
        const AffinityKind akind = parse_affinity_kind(aff_name);
        Fields af(aff_body, sf.context() + ".affinity." + aff_name);
        AffinityConfig acfg;
        detail::read_affinity_fields(af, acfg);
        af.finish();
        table.set(kind, akind, {scfg, acfg});
      }
      sf.finish();
    }
    ds.finish();
    if (!table.complete()) {
      throw ConfigError(ctx + ": must define all 4 solvers x 4 affinities");
    }
    out.emplace(name, std::move(table));
  }
  top.finish();
  return out;
}

std::map<std::string, PresetTable> load_presets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open presets file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_presets(buf.str());
}

const std::map<std::string, PresetTable>& builtin_presets() {
  static const auto presets = parse_presets(detail::kBuiltinPresetsJson);
  return presets;
}

const PresetTable& builtin_preset(std::string_view name) {
  const auto& all = builtin_presets();
  const auto it = all.find(std::string(name));
  if (it == all.end()) {
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected yaleb, ar or usps)");
  }
  return it->second;
}

}  // namespace subclust
