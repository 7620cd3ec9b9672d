#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "facefuse/trace.hpp"

namespace facefuse {

using ScenarioParams = std::map<std::string, double>;

struct Scenario {
  std::string name;
  ScenarioParams params;  // overrides of the scenario defaults
  std::uint64_t seed = 0;
};

/// The event a noiseless replay of a scenario must produce, `count` times
/// (0 = at least once).
struct ExpectedEvent {
  std::string technique;
  std::string kind;
  std::string key;
  std::string value;
  int count = 0;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
  ScenarioParams defaults;
  ExpectedEvent expected;
};

const std::vector<ScenarioInfo>& builtin_scenarios();

/// Throws Error(UnknownScenario) for an unknown name and Error(BadConfig)
/// for a parameter the scenario does not define. Same scenario, params and
/// seed always give the same trace.
Trace generate(const Scenario& scenario);

/// Parses "k=v" into params; throws Error(BadConfig) if malformed.
void parse_param(std::string_view text, ScenarioParams& params);

}  // namespace facefuse
