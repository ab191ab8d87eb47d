#pragma once

// Strict JSON object reader: every key must be consumed or finish() throws.

#include <set>
#include <string>

#include "json.hpp"
#include "subclust/affinity.hpp"
#include "subclust/common.hpp"
#include "subclust/data_model.hpp"
#include "subclust/solvers.hpp"

namespace subclust::detail {

using json = nlohmann::json;

class Fields {
 public:
  Fields(const json& obj, std::string context) : obj_(obj), context_(std::move(context)) {
    if (!obj_.is_object()) throw ConfigError(context_ + ": expected a JSON object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return obj_.at(key);
  }

  template <typename T>
  bool get(const std::string& key, T& out) {
    if (!obj_.contains(key)) return false;
    seen_.insert(key);
    try {
      out = obj_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(context_ + "." + key + ": " + e.what());
    }
    return true;
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) throw ConfigError(context_ + ": unknown key '" + key + "'");
    }
  }

  const std::string& context() const { return context_; }

 private:
  const json& obj_;
  std::string context_;
  std::set<std::string> seen_;
};

json parse_json(std::string_view text, const std::string& what);

/// Reads SolverConfig keys from `f` into `cfg` (kind/affinity keys are left
/// for the caller).
void read_solver_fields(Fields& f, SolverConfig& cfg);
void read_affinity_fields(Fields& f, AffinityConfig& cfg);
void read_preprocessing(const json& obj, const std::string& context, Preprocessing& out);

}  // namespace subclust::detail
