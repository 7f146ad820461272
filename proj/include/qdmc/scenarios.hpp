#pragma once

#include "qdmc/correlations.hpp"
#include "qdmc/dynamics.hpp"
#include "qdmc/model.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qdmc {

inline constexpr std::string_view kToolName = "qdmc";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct Sweep {
  std::string parameter;  ///< any SystemParams field name, e.g. "forster_over_2pi", "tau_p"
  std::vector<double> values;
};

struct SpectrumSettings {
  int manifold = 1;
  double delta_min = -50.0;  ///< GHz
  double delta_max = 50.0;   ///< GHz
  int steps = 401;

  std::vector<double> deltas() const;
};

struct ScenarioConfig {
  std::string name = "custom";
  SystemParams params;
  InitialState initial_state = InitialState::symmetric;
  double t_end = 150.0;     ///< ps
  double sample_dt = 0.25;  ///< ps
  std::optional<Sweep> sweep;
  std::filesystem::path output_dir = "out";
  IntegratorOptions integrator;
  /// Present for spectrum scenarios; run_spectrum() reads it.
  std::optional<SpectrumSettings> spectrum;
  int workers = 1;

  /// Throws UsageError describing the first problem found.
  void validate() const;
};

std::vector<std::string> preset_names();

/// fig4a, fig4b, fig5, fig6, fig7, spectrum1, spectrum2. Unknown names throw UsageError.
ScenarioConfig preset(std::string_view name);

/// Names accepted by sweeps and by set_parameter().
const std::vector<std::string>& parameter_names();
void set_parameter(SystemParams& params, std::string_view name, double value);
double get_parameter(const SystemParams& params, std::string_view name);

/// Parameters of one sweep point (or the base parameters without a sweep).
std::vector<SystemParams> sweep_points(const ScenarioConfig& config);

/// `<name>.csv` or `<name>_<param>=<value>.csv`.
std::string csv_file_name(const ScenarioConfig& config, std::optional<double> sweep_value);

/// Full pipeline for one parameter point.
struct Simulation {
  HilbertSpace space;
  Trajectory trajectory;
  std::vector<CorrelationRecord> records;
  std::vector<ObservableRow> observables;
};

Simulation simulate(const SystemParams& params, InitialState initial_state, double t_end, double sample_dt,
                    const IntegratorOptions& integrator = {});

/// Column names of the trajectory CSV, in order.
const std::vector<std::string>& csv_columns();

/// UTF-8, header row, 12 significant digits.
void write_trajectory_csv(const std::filesystem::path& path, const Simulation& simulation);

struct TrajectoryOutcome {
  std::optional<double> sweep_value;
  SystemParams params;
  std::filesystem::path file;
  bool ok = false;
  std::string error;
};

struct RunResult {
  std::vector<TrajectoryOutcome> outcomes;
  std::filesystem::path manifest;

  bool all_ok() const;
  std::vector<std::filesystem::path> files() const;
};

/// Runs every sweep point (in parallel up to config.workers), writes one CSV
/// per point plus manifest.json. A failing point is recorded in the manifest
/// and does not stop its siblings. Throws IoError when output cannot be written.
RunResult run(const ScenarioConfig& config);

/// Writes `<name>.csv` with columns delta_ghz, eig1..eigK (GHz) and returns its path.
std::filesystem::path run_spectrum(const ScenarioConfig& config);

}  // namespace qdmc
