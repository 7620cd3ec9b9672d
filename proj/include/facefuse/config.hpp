#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "facefuse/fusion_engine.hpp"
#include "facefuse/techniques/registry.hpp"

namespace facefuse {

struct SessionConfig {
  EngineConfig engine;
  TechniqueSettings techniques;
  std::vector<std::string> enabled = builtin_technique_ids();
  int state_hz = 20;  // gateway STATE cadence
};

/// Parses a JSON config document. Unknown keys, wrong types and out of
/// range values throw Error(BadConfig).
SessionConfig parse_config(std::string_view json_text);

/// Reads and parses a config file; an empty path gives the defaults.
SessionConfig load_config(const std::string& path);

/// Config path from an explicit flag, else FACEFUSE_CONFIG, else empty.
std::string resolve_config_path(const std::string& flag_value);

/// Applies one dotted override such as "touch_free_menu.timeout_ms" = "3000".
void apply_override(SessionConfig& config, const std::string& key, const std::string& value);

/// Applies every override in order.
void apply_overrides(SessionConfig& config,
                     const std::vector<std::pair<std::string, std::string>>& overrides);

}  // namespace facefuse
