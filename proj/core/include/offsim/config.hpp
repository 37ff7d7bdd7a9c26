#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <offsim/engine.hpp>

namespace offsim {

// Carries every violation found, not just the first.
struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> issues);
  std::vector<std::string> issues;
};

struct LoadedScenario {
  Scenario scenario;
  std::vector<std::string> warnings;  // non-fatal, e.g. deadline > lambda
};

// JSON scenario file; grammar documented in docs/config.md.
LoadedScenario load_scenario(const std::string& path);
LoadedScenario parse_scenario(const std::string& text);

// Semantic checks shared by both entry points; throws ConfigError on the
// first fatal batch, returns warnings otherwise.
std::vector<std::string> validate_scenario(const Scenario& s);

// Exactly one generator-only host and every other host worker-only.
bool is_single_generator_topology(const Scenario& s);

}  // namespace offsim
