#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "adnls/experiment.hpp"

#ifndef ADNLS_PRESET_DIR
#define ADNLS_PRESET_DIR "presets"
#endif

namespace adnls {

namespace {

using nlohmann::json;

void reject_unknown(const json& object, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, _] : object.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read_optional(const json& object, const char* key, T& target) {
  if (object.contains(key)) target = object.at(key).get<T>();
}

ExperimentSpec from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("experiment must be a JSON object");
  reject_unknown(doc,
                 {"name", "description", "lattice", "model", "epsilon", "initial_condition",
                  "m_target", "integrator", "outputs"},
                 "experiment");
  ExperimentSpec spec;
  read_optional(doc, "name", spec.name);

  if (doc.contains("lattice")) {
    const json& lat = doc.at("lattice");
    reject_unknown(lat, {"n_sites", "alpha", "gamma", "j_ratio", "length"}, "lattice");
    read_optional(lat, "n_sites", spec.config.n_sites);
    read_optional(lat, "alpha", spec.config.alpha);
    read_optional(lat, "gamma", spec.config.gamma);
    read_optional(lat, "j_ratio", spec.config.j_ratio);
    read_optional(lat, "length", spec.config.length);
  }

  if (doc.contains("model")) {
    const auto model = doc.at("model").get<std::string>();
    if (model == "long_range") {
      spec.model = CouplingModel::long_range;
    } else if (model == "nearest_neighbor") {
      spec.model = CouplingModel::nearest_neighbor;
    } else {
      throw ConfigError("model must be long_range or nearest_neighbor, got '" + model + "'");
    }
  }
  if (doc.contains("epsilon") && !doc.at("epsilon").is_null()) {
    spec.epsilon = doc.at("epsilon").get<double>();
  }

  if (doc.contains("initial_condition")) {
    const json& ic = doc.at("initial_condition");
    reject_unknown(ic, {"kind", "params"}, "initial_condition");
    const auto kind = ic.value("kind", std::string("symmetric"));
    if (kind == "symmetric") {
      spec.ic = InitialCondition::symmetric;
    } else if (kind == "asymmetric") {
      spec.ic = InitialCondition::asymmetric;
    } else {
      throw ConfigError("initial_condition.kind must be symmetric or asymmetric");
    }
    read_optional(ic, "params", spec.ic_params);
  }

  read_optional(doc, "m_target", spec.m_target);

  if (doc.contains("integrator")) {
    const json& in = doc.at("integrator");
    reject_unknown(in, {"t_final", "n_samples", "rel_tol", "abs_tol", "max_step"}, "integrator");
    read_optional(in, "t_final", spec.settings.t_final);
    read_optional(in, "n_samples", spec.settings.n_samples);
    read_optional(in, "rel_tol", spec.settings.rel_tol);
    read_optional(in, "abs_tol", spec.settings.abs_tol);
    if (in.contains("max_step") && !in.at("max_step").is_null()) {
      spec.settings.max_step = in.at("max_step").get<double>();
    }
  }
  read_optional(doc, "outputs", spec.outputs);
  spec.validate();
  return spec;
}

}  // namespace

ExperimentSpec parse_experiment(const std::string& json_text) {
  try {
    return from_json(json::parse(json_text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid experiment JSON: ") + e.what());
  }
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open experiment file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment(text.str());
}

std::string experiment_to_json(const ExperimentSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["lattice"] = {{"n_sites", spec.config.n_sites},
                    {"alpha", spec.config.alpha},
                    {"gamma", spec.config.gamma},
                    {"j_ratio", spec.config.j_ratio},
                    {"length", spec.config.length}};
  doc["model"] = spec.model == CouplingModel::long_range ? "long_range" : "nearest_neighbor";
  if (spec.epsilon) doc["epsilon"] = *spec.epsilon;
  doc["initial_condition"] = {
      {"kind", spec.ic == InitialCondition::symmetric ? "symmetric" : "asymmetric"},
      {"params", spec.ic_params}};
  doc["m_target"] = spec.m_target;
  json in = {{"t_final", spec.settings.t_final},
             {"n_samples", spec.settings.n_samples},
             {"rel_tol", spec.settings.rel_tol},
             {"abs_tol", spec.settings.abs_tol}};
  if (std::isfinite(spec.settings.max_step)) in["max_step"] = spec.settings.max_step;
  doc["integrator"] = in;
  doc["outputs"] = spec.outputs;
  return doc.dump(2);
}

std::filesystem::path default_preset_dir() {
  if (const char* env = std::getenv("ADNLS_PRESET_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return ADNLS_PRESET_DIR;
}

std::vector<std::string> list_presets(const std::filesystem::path& dir) {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      names.push_back(entry.path().stem().string());
    }
  }
  if (ec) throw ConfigError("cannot read preset directory " + dir.string());
  std::sort(names.begin(), names.end());
  return names;
}

ExperimentSpec load_preset(const std::filesystem::path& dir, const std::string& name) {
  const auto path = dir / (name + ".json");
  if (!std::filesystem::exists(path)) {
    throw ConfigError("unknown preset '" + name + "' (looked in " + dir.string() + ")");
  }
  ExperimentSpec spec = load_experiment(path);
  if (spec.name.empty()) spec.name = name;
  return spec;
}

}  // namespace adnls
