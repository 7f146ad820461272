#include "qdmc/scenarios.hpp"

#include "qdmc/config_io.hpp"
#include "qdmc/error.hpp"
#include "qdmc/units.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>

namespace qdmc {

namespace {

// Shared base of every figure preset: g, kappa, gamma in GHz.
SystemParams base_params() {
  SystemParams p;
  p.g_over_2pi = 10.0;
  p.kappa_over_2pi = 5.0;
  p.gamma_over_2pi = 0.025;
  return p;
}

// With an incoherent cavity pump the photon distribution acquires a thermal
// tail; n_max = 10 keeps the top level below 1e-6 for every pumped preset.
constexpr int kPumpedNmax = 10;

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

void write_line(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_number(values[i]);
  }
  out << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out = open_output(path);
  out << doc.dump(2) << '\n';
  finish_output(out, path);
}

}  // namespace

std::vector<double> SpectrumSettings::deltas() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out.push_back(steps == 1 ? delta_min : delta_min + (delta_max - delta_min) * i / (steps - 1));
  }
  return out;
}

void ScenarioConfig::validate() const {
  try {
    params.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (!(t_end > 0.0)) throw UsageError("t_end must be > 0");
  if (!(sample_dt > 0.0)) throw UsageError("sample_dt must be > 0");
  if (workers < 1) throw UsageError("workers must be >= 1");
  if (!(integrator.rtol > 0.0) || !(integrator.atol > 0.0)) throw UsageError("integrator tolerances must be > 0");
  if (integrator.fixed_step < 0.0) throw UsageError("fixed_step must be >= 0");
  if (sweep) {
    if (sweep->values.empty()) throw UsageError("sweep values must not be empty");
    SystemParams probe = params;
    for (double v : sweep->values) {
      set_parameter(probe, sweep->parameter, v);
      try {
        probe.validate();
      } catch (const InvalidArgument& e) {
        throw UsageError("sweep value " + format_number(v) + " for " + sweep->parameter + ": " + e.what());
      }
    }
  }
  if (spectrum) {
    if (spectrum->manifold != 1 && spectrum->manifold != 2) throw UsageError("spectrum manifold must be 1 or 2");
    if (spectrum->steps < 1) throw UsageError("spectrum steps must be >= 1");
    if (!(spectrum->delta_max >= spectrum->delta_min)) throw UsageError("delta_max must be >= delta_min");
  }
}

std::vector<std::string> preset_names() {
  return {"fig4a", "fig4b", "fig5", "fig6", "fig7", "spectrum1", "spectrum2"};
}

ScenarioConfig preset(std::string_view name) {
  ScenarioConfig c;
  c.name = std::string(name);
  c.params = base_params();
  c.t_end = 150.0;
  c.sample_dt = 0.25;

  if (name == "fig4a") {
    c.params.forster_over_2pi = 15.0;
  } else if (name == "fig4b") {
    c.params.forster_over_2pi = 0.0;
    c.params.pc_over_2pi = 1.0;
    c.params.pulse.p0_over_2pi = 1.0;
    c.params.pulse.tau_p = 20.0;
    c.params.n_max = kPumpedNmax;
  } else if (name == "fig5") {
    c.params.pc_over_2pi = 1.0;
    c.params.pulse.p0_over_2pi = 1.0;
    c.params.pulse.tau_p = 20.0;
    c.params.forster_over_2pi = 5.0;
    c.params.n_max = kPumpedNmax;
    c.sweep = Sweep{"forster_over_2pi", {5.0, 10.0, 15.0, 20.0}};
  } else if (name == "fig6") {
    c.params.pc_over_2pi = 0.5;
    c.params.forster_over_2pi = 15.0;
    c.params.pulse.tau_p = 20.0;
    c.params.pulse.p0_over_2pi = 0.5;
    c.params.n_max = kPumpedNmax;
    c.sweep = Sweep{"p0_over_2pi", {0.5, 1.0, 1.5, 2.0, 2.5}};
  } else if (name == "fig7") {
    c.params.pc_over_2pi = 1.0;
    c.params.pulse.p0_over_2pi = 1.0;
    c.params.forster_over_2pi = 15.0;
    c.params.pulse.tau_p = 1.0;
    c.params.n_max = kPumpedNmax;
    c.sweep = Sweep{"tau_p", {1.0, 5.0, 10.0, 15.0, 20.0}};
  } else if (name == "spectrum1" || name == "spectrum2") {
    c.spectrum = SpectrumSettings{name == "spectrum1" ? 1 : 2, -50.0, 50.0, 401};
  } else {
    std::string valid;
    for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw UsageError("unknown preset '" + std::string(name) + "' (valid: " + valid + ")");
  }
  return c;
}

const std::vector<std::string>& parameter_names() {
  static const std::vector<std::string> names{"g_over_2pi",  "gamma_over_2pi", "kappa_over_2pi",
                                              "forster_over_2pi", "delta_over_2pi", "pc_over_2pi",
                                              "p0_over_2pi", "tau_p", "t0", "n_max"};
  return names;
}

void set_parameter(SystemParams& p, std::string_view name, double value) {
  if (name == "g_over_2pi") p.g_over_2pi = value;
  else if (name == "gamma_over_2pi") p.gamma_over_2pi = value;
  else if (name == "kappa_over_2pi") p.kappa_over_2pi = value;
  else if (name == "forster_over_2pi") p.forster_over_2pi = value;
  else if (name == "delta_over_2pi") p.delta_over_2pi = value;
  else if (name == "pc_over_2pi") p.pc_over_2pi = value;
  else if (name == "p0_over_2pi") p.pulse.p0_over_2pi = value;
  else if (name == "tau_p") p.pulse.tau_p = value;
  else if (name == "t0") p.pulse.t0 = value;
  else if (name == "n_max") {
    if (value != std::floor(value)) throw UsageError("n_max must be an integer");
    p.n_max = static_cast<int>(value);
  } else {
    throw UsageError("unknown parameter '" + std::string(name) + "'");
  }
}

double get_parameter(const SystemParams& p, std::string_view name) {
  if (name == "g_over_2pi") return p.g_over_2pi;
  if (name == "gamma_over_2pi") return p.gamma_over_2pi;
  if (name == "kappa_over_2pi") return p.kappa_over_2pi;
  if (name == "forster_over_2pi") return p.forster_over_2pi;
  if (name == "delta_over_2pi") return p.delta_over_2pi;
  if (name == "pc_over_2pi") return p.pc_over_2pi;
  if (name == "p0_over_2pi") return p.pulse.p0_over_2pi;
  if (name == "tau_p") return p.pulse.tau_p;
  if (name == "t0") return p.pulse.center();
  if (name == "n_max") return p.n_max;
  throw UsageError("unknown parameter '" + std::string(name) + "'");
}

std::vector<SystemParams> sweep_points(const ScenarioConfig& config) {
  if (!config.sweep) return {config.params};
  std::vector<SystemParams> out;
  for (double v : config.sweep->values) {
    SystemParams p = config.params;
    set_parameter(p, config.sweep->parameter, v);
    out.push_back(p);
  }
  return out;
}

std::string csv_file_name(const ScenarioConfig& config, std::optional<double> sweep_value) {
  if (!config.sweep || !sweep_value) return config.name + ".csv";
  char value[64];
  std::snprintf(value, sizeof value, "%g", *sweep_value);
  return config.name + "_" + config.sweep->parameter + "=" + value + ".csv";
}

Simulation simulate(const SystemParams& params, InitialState initial_state, double t_end, double sample_dt,
                    const IntegratorOptions& integrator) {
  params.validate();
  HilbertSpace space = make_space(params.n_max);
  Trajectory trajectory =
      integrate(space, params, initial_density(space, initial_state), {0.0, t_end}, sample_dt, integrator);
  std::vector<CorrelationRecord> records = evaluate_trajectory(space, trajectory);
  std::vector<ObservableRow> rows = observables(space, trajectory);
  return {space, std::move(trajectory), std::move(records), std::move(rows)};
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns{"t_ps",    "cc",       "eof",    "mutual_info",
                                                "classical", "discord", "n_photon", "pop_x1",
                                                "pop_x2",  "pump_px",  "top_fock"};
  return columns;
}

void write_trajectory_csv(const std::filesystem::path& path, const Simulation& sim) {
  std::ofstream out = open_output(path);
  const auto& columns = csv_columns();
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (std::size_t k = 0; k < sim.records.size(); ++k) {
    const CorrelationRecord& r = sim.records[k];
    const ObservableRow& o = sim.observables[k];
    write_line(out, {r.t, r.cc, r.eof, r.mutual_info, r.classical, r.discord, o.n_photon, o.pop_x1, o.pop_x2,
                     ghz_from_angular(sim.trajectory.pump_values[k]), o.top_fock});
  }
  finish_output(out, path);
}

bool RunResult::all_ok() const {
  for (const auto& o : outcomes)
    if (!o.ok) return false;
  return true;
}

std::vector<std::filesystem::path> RunResult::files() const {
  std::vector<std::filesystem::path> out;
  for (const auto& o : outcomes)
    if (o.ok) out.push_back(o.file);
  out.push_back(manifest);
  return out;
}

RunResult run(const ScenarioConfig& config) {
  config.validate();
  if (config.spectrum) throw UsageError("preset '" + config.name + "' is a spectrum scenario; use run_spectrum");
  ensure_directory(config.output_dir);

  const std::vector<SystemParams> points = sweep_points(config);
  RunResult result;
  result.outcomes.resize(points.size());
  std::vector<std::exception_ptr> io_errors(points.size());

  const long count = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.workers)
  for (long i = 0; i < count; ++i) {
    TrajectoryOutcome& outcome = result.outcomes[i];
    outcome.params = points[i];
    if (config.sweep) outcome.sweep_value = config.sweep->values[i];
    outcome.file = config.output_dir / csv_file_name(config, outcome.sweep_value);
    try {
      const Simulation sim =
          simulate(points[i], config.initial_state, config.t_end, config.sample_dt, config.integrator);
      write_trajectory_csv(outcome.file, sim);
      outcome.ok = true;
    } catch (const IoError&) {
      io_errors[i] = std::current_exception();
      outcome.error = "I/O failure";
    } catch (const std::exception& e) {
      outcome.error = e.what();
    }
  }

  nlohmann::json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["config"] = to_json(config);
  manifest["csv_columns"] = csv_columns();
  nlohmann::json trajectories = nlohmann::json::array();
  for (const auto& o : result.outcomes) {
    nlohmann::json entry;
    entry["file"] = o.file.filename().string();
    entry["sweep_value"] = o.sweep_value ? nlohmann::json(*o.sweep_value) : nlohmann::json(nullptr);
    entry["params"] = to_json(o.params);
    entry["pulse_center_ps"] = o.params.pulse.center();
    entry["status"] = o.ok ? "ok" : "error";
    if (!o.ok) entry["error"] = o.error;
    trajectories.push_back(entry);
  }
  manifest["trajectories"] = trajectories;
  result.manifest = config.output_dir / "manifest.json";
  write_json(result.manifest, manifest);

  for (const auto& e : io_errors)
    if (e) std::rethrow_exception(e);
  return result;
}

std::filesystem::path run_spectrum(const ScenarioConfig& config) {
  config.validate();
  if (!config.spectrum) throw UsageError("config '" + config.name + "' has no spectrum settings");
  ensure_directory(config.output_dir);

  const std::vector<double> deltas = config.spectrum->deltas();
  const std::vector<SpectrumRow> rows = spectrum_sweep(config.params, config.spectrum->manifold, deltas);

  const std::filesystem::path path = config.output_dir / (config.name + ".csv");
  std::ofstream out = open_output(path);
  out << "delta_ghz";
  for (std::size_t i = 0; i < rows.front().eigenvalues.size(); ++i) out << ",eig" << i + 1;
  out << '\n';
  for (const SpectrumRow& row : rows) {
    std::vector<double> values{row.delta_over_2pi};
    for (double e : row.eigenvalues) values.push_back(ghz_from_angular(e));
    write_line(out, values);
  }
  finish_output(out, path);

  nlohmann::json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["config"] = to_json(config);
  manifest["file"] = path.filename().string();
  write_json(config.output_dir / "manifest.json", manifest);
  return path;
}

}  // namespace qdmc
