// qdmc: command-line front end.
//
//   qdmc simulate --preset <name> [--config <file>] [--out <dir>] [--initial-state <tag>]
//                 [--t-end <ps>] [--workers <n>] [--fixed-step <ps>]
//   qdmc spectrum --manifold <1|2> [--delta-min <GHz> --delta-max <GHz> --steps <n>] [--out <dir>]
//   qdmc validate --config <file>
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure, 1 anything else.

#include "qdmc/config_io.hpp"
#include "qdmc/error.hpp"
#include "qdmc/scenarios.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct SimulateArgs {
  std::string preset;
  std::string config;
  std::string out;
  std::string initial_state;
  std::optional<double> t_end;
  std::optional<int> workers;
  std::optional<double> fixed_step;
};

struct SpectrumArgs {
  int manifold = 1;
  std::optional<double> delta_min;
  std::optional<double> delta_max;
  std::optional<int> steps;
  std::string config;
  std::string out;
};

qdmc::ScenarioConfig resolve(const SimulateArgs& args) {
  if (args.preset.empty() && args.config.empty()) {
    throw qdmc::UsageError("simulate needs --preset and/or --config");
  }
  std::optional<qdmc::ScenarioConfig> base;
  if (!args.preset.empty()) base = qdmc::preset(args.preset);
  qdmc::ScenarioConfig config = args.config.empty() ? *base : qdmc::load_config(args.config, base);
  if (!args.out.empty()) config.output_dir = args.out;
  if (!args.initial_state.empty()) config.initial_state = qdmc::parse_initial_state(args.initial_state);
  if (args.t_end) config.t_end = *args.t_end;
  if (args.workers) config.workers = *args.workers;
  if (args.fixed_step) config.integrator.fixed_step = *args.fixed_step;
  config.validate();
  return config;
}

int run_simulate(const SimulateArgs& args) {
  const qdmc::ScenarioConfig config = resolve(args);
  if (config.spectrum) {
    std::cout << qdmc::run_spectrum(config).string() << '\n';
    return 0;
  }
  const qdmc::RunResult result = qdmc::run(config);
  for (const auto& outcome : result.outcomes) {
    if (outcome.ok) {
      std::cout << outcome.file.string() << '\n';
    } else {
      std::cerr << "error: " << outcome.file.filename().string() << ": " << outcome.error << '\n';
    }
  }
  std::cout << result.manifest.string() << '\n';
  return result.all_ok() ? 0 : kExitNumerical;
}

int run_spectrum(const SpectrumArgs& args) {
  qdmc::ScenarioConfig config = qdmc::preset(args.manifold == 1 ? "spectrum1" : "spectrum2");
  if (!args.config.empty()) config = qdmc::load_config(args.config, config);
  config.spectrum->manifold = args.manifold;
  if (args.delta_min) config.spectrum->delta_min = *args.delta_min;
  if (args.delta_max) config.spectrum->delta_max = *args.delta_max;
  if (args.steps) config.spectrum->steps = *args.steps;
  if (!args.out.empty()) config.output_dir = args.out;
  std::cout << qdmc::run_spectrum(config).string() << '\n';
  return 0;
}

int run_validate(const std::string& path) {
  const qdmc::ScenarioConfig config = qdmc::load_config(path);
  config.validate();
  std::cout << qdmc::to_json(config).dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two quantum dots in a lossy microcavity: master-equation dynamics and quantum correlations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qdmc::kToolVersion));

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Integrate a scenario and write CSV + manifest.json");
  simulate->add_option("--preset", sim.preset, "Preset name (fig4a, fig4b, fig5, fig6, fig7, spectrum1, spectrum2)");
  simulate->add_option("--config", sim.config, "JSON config file; overlays the preset when both are given");
  simulate->add_option("--out", sim.out, "Output directory");
  simulate->add_option("--initial-state", sim.initial_state, "gg0, eg0, ge0 or sym");
  simulate->add_option("--t-end", sim.t_end, "End time in ps");
  simulate->add_option("--workers", sim.workers, "Sweep points run in parallel");
  simulate->add_option("--fixed-step", sim.fixed_step, "Fixed integrator step in ps (disables error control)");

  SpectrumArgs spec;
  auto* spectrum = app.add_subcommand("spectrum", "Dressed-state energies of an excitation manifold vs detuning");
  spectrum->add_option("--manifold", spec.manifold, "Excitation manifold (1 or 2)")->required()->check(CLI::IsMember({1, 2}));
  spectrum->add_option("--delta-min", spec.delta_min, "Lowest detuning, GHz");
  spectrum->add_option("--delta-max", spec.delta_max, "Highest detuning, GHz");
  spectrum->add_option("--steps", spec.steps, "Number of detuning points");
  spectrum->add_option("--config", spec.config, "JSON file with parameter overrides");
  spectrum->add_option("--out", spec.out, "Output directory");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Resolve a config file and print it without running");
  validate->add_option("--config", validate_path, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*spectrum) return run_spectrum(spec);
    if (*validate) return run_validate(validate_path);
  } catch (const qdmc::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qdmc::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qdmc::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
