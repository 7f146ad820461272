#pragma once

#include "qdmc/scenarios.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>

namespace qdmc {

/// Complete, defaults-included description of a scenario. Keys mirror the
/// ScenarioConfig / SystemParams field names; `params.pulse.t0` is null when
/// the pulse centre follows tau_p.
nlohmann::json to_json(const ScenarioConfig& config);
nlohmann::json to_json(const SystemParams& params);

/// Overlays `doc` on `base`. Missing keys keep the base value; unknown keys
/// and ill-typed values throw UsageError.
ScenarioConfig config_from_json(const nlohmann::json& doc, ScenarioConfig base = {});

/// Reads a config file. The base is `base` when given, otherwise the preset
/// named by the file's `preset` key, otherwise the defaults. A manifest
/// written by run() is accepted too (its `config` member is used).
ScenarioConfig load_config(const std::filesystem::path& path, std::optional<ScenarioConfig> base = std::nullopt);

}  // namespace qdmc
