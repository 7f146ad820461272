#include "qdmc/config_io.hpp"

#include "qdmc/error.hpp"

#include <algorithm>
#include <fstream>
#include <string>

namespace qdmc {

using nlohmann::json;

namespace {

void require_object(const json& node, const std::string& where) {
  if (!node.is_object()) throw UsageError("config: '" + where + "' must be an object");
}

[[noreturn]] void unknown_key(const std::string& where, const std::string& key) {
  throw UsageError("config: unknown key '" + (where.empty() ? key : where + "." + key) + "'");
}

double number(const json& value, const std::string& key) {
  if (!value.is_number()) throw UsageError("config: '" + key + "' must be a number");
  return value.get<double>();
}

int integer(const json& value, const std::string& key) {
  if (!value.is_number_integer()) throw UsageError("config: '" + key + "' must be an integer");
  return value.get<int>();
}

void read_pulse(const json& node, PulseParams& pulse) {
  require_object(node, "params.pulse");
  for (const auto& [key, value] : node.items()) {
    if (key == "p0_over_2pi") pulse.p0_over_2pi = number(value, key);
    else if (key == "tau_p") pulse.tau_p = number(value, key);
    else if (key == "t0") {
      if (value.is_null()) pulse.t0.reset();
      else pulse.t0 = number(value, key);
    } else unknown_key("params.pulse", key);
  }
}

void read_params(const json& node, SystemParams& p) {
  require_object(node, "params");
  for (const auto& [key, value] : node.items()) {
    if (key == "g_over_2pi") p.g_over_2pi = number(value, key);
    else if (key == "gamma_over_2pi") p.gamma_over_2pi = number(value, key);
    else if (key == "kappa_over_2pi") p.kappa_over_2pi = number(value, key);
    else if (key == "forster_over_2pi") p.forster_over_2pi = number(value, key);
    else if (key == "delta_over_2pi") p.delta_over_2pi = number(value, key);
    else if (key == "pc_over_2pi") p.pc_over_2pi = number(value, key);
    else if (key == "n_max") p.n_max = integer(value, key);
    else if (key == "pulse") read_pulse(value, p.pulse);
    else unknown_key("params", key);
  }
}

void read_integrator(const json& node, IntegratorOptions& o) {
  require_object(node, "integrator");
  for (const auto& [key, value] : node.items()) {
    if (key == "rtol") o.rtol = number(value, key);
    else if (key == "atol") o.atol = number(value, key);
    else if (key == "fixed_step") o.fixed_step = number(value, key);
    else if (key == "max_step") o.max_step = number(value, key);
    else if (key == "truncation_limit") o.truncation_limit = number(value, key);
    else if (key == "truncation_guard") {
      if (!value.is_boolean()) throw UsageError("config: 'truncation_guard' must be a boolean");
      o.truncation_guard = value.get<bool>();
    } else unknown_key("integrator", key);
  }
}

std::optional<Sweep> read_sweep(const json& node) {
  if (node.is_null()) return std::nullopt;
  require_object(node, "sweep");
  Sweep sweep;
  for (const auto& [key, value] : node.items()) {
    if (key == "parameter") {
      if (!value.is_string()) throw UsageError("config: 'sweep.parameter' must be a string");
      sweep.parameter = value.get<std::string>();
    } else if (key == "values") {
      if (!value.is_array()) throw UsageError("config: 'sweep.values' must be an array");
      for (const auto& v : value) sweep.values.push_back(number(v, "sweep.values"));
    } else unknown_key("sweep", key);
  }
  const auto& names = parameter_names();
  if (std::find(names.begin(), names.end(), sweep.parameter) == names.end()) {
    throw UsageError("config: unknown sweep parameter '" + sweep.parameter + "'");
  }
  return sweep;
}

std::optional<SpectrumSettings> read_spectrum(const json& node, std::optional<SpectrumSettings> base) {
  if (node.is_null()) return std::nullopt;
  require_object(node, "spectrum");
  SpectrumSettings s = base.value_or(SpectrumSettings{});
  for (const auto& [key, value] : node.items()) {
    if (key == "manifold") s.manifold = integer(value, key);
    else if (key == "delta_min") s.delta_min = number(value, key);
    else if (key == "delta_max") s.delta_max = number(value, key);
    else if (key == "steps") s.steps = integer(value, key);
    else unknown_key("spectrum", key);
  }
  return s;
}

}  // namespace

json to_json(const SystemParams& p) {
  return {
      {"g_over_2pi", p.g_over_2pi},
      {"gamma_over_2pi", p.gamma_over_2pi},
      {"kappa_over_2pi", p.kappa_over_2pi},
      {"forster_over_2pi", p.forster_over_2pi},
      {"delta_over_2pi", p.delta_over_2pi},
      {"pc_over_2pi", p.pc_over_2pi},
      {"n_max", p.n_max},
      {"pulse",
       {{"p0_over_2pi", p.pulse.p0_over_2pi},
        {"tau_p", p.pulse.tau_p},
        {"t0", p.pulse.t0 ? json(*p.pulse.t0) : json(nullptr)}}},
  };
}

json to_json(const ScenarioConfig& c) {
  json doc;
  doc["name"] = c.name;
  doc["params"] = to_json(c.params);
  doc["initial_state"] = std::string(to_string(c.initial_state));
  doc["t_end"] = c.t_end;
  doc["sample_dt"] = c.sample_dt;
  doc["sweep"] = c.sweep ? json{{"parameter", c.sweep->parameter}, {"values", c.sweep->values}} : json(nullptr);
  doc["output_dir"] = c.output_dir.string();
  doc["integrator"] = {
      {"rtol", c.integrator.rtol},
      {"atol", c.integrator.atol},
      {"fixed_step", c.integrator.fixed_step},
      {"max_step", c.integrator.max_step},
      {"truncation_limit", c.integrator.truncation_limit},
      {"truncation_guard", c.integrator.truncation_guard},
  };
  doc["spectrum"] = c.spectrum ? json{{"manifold", c.spectrum->manifold},
                                      {"delta_min", c.spectrum->delta_min},
                                      {"delta_max", c.spectrum->delta_max},
                                      {"steps", c.spectrum->steps}}
                               : json(nullptr);
  doc["workers"] = c.workers;
  return doc;
}

ScenarioConfig config_from_json(const json& doc, ScenarioConfig base) {
  require_object(doc, "<root>");
  ScenarioConfig c = std::move(base);
  for (const auto& [key, value] : doc.items()) {
    if (key == "preset") continue;  // consumed by load_config
    if (key == "name") {
      if (!value.is_string()) throw UsageError("config: 'name' must be a string");
      c.name = value.get<std::string>();
    } else if (key == "params") read_params(value, c.params);
    else if (key == "initial_state") {
      if (!value.is_string()) throw UsageError("config: 'initial_state' must be a string");
      c.initial_state = parse_initial_state(value.get<std::string>());
    } else if (key == "t_end") c.t_end = number(value, key);
    else if (key == "sample_dt") c.sample_dt = number(value, key);
    else if (key == "sweep") c.sweep = read_sweep(value);
    else if (key == "output_dir") {
      if (!value.is_string()) throw UsageError("config: 'output_dir' must be a string");
      c.output_dir = value.get<std::string>();
    } else if (key == "integrator") read_integrator(value, c.integrator);
    else if (key == "spectrum") c.spectrum = read_spectrum(value, c.spectrum);
    else if (key == "workers") c.workers = integer(value, key);
    else unknown_key("", key);
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path, std::optional<ScenarioConfig> base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  if (doc.is_object() && doc.contains("config") && doc.contains("tool")) doc = doc["config"];

  if (!base && doc.is_object() && doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw UsageError("config: 'preset' must be a string");
    base = preset(doc["preset"].get<std::string>());
  }
  return config_from_json(doc, base.value_or(ScenarioConfig{}));
}

}  // namespace qdmc
