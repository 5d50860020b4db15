#pragma once

// Scenario configuration files: INI text with the sections
// [arena] [walls] [beacon] [spawns] [temperament] [appraisal_gains]
// [thresholds] and an optional [teams].

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "emosim/mind.hpp"
#include "emosim/temperament.hpp"
#include "emosim/world.hpp"

namespace emosim {

inline constexpr std::uint32_t kDefaultMaxCycles = 1800;  // 180 s at 100 ms per cycle

struct ScenarioConfig {
  std::string id = "scenario";
  WorldConfig world;
  AgentParams agent;
  std::uint32_t max_cycles = kDefaultMaxCycles;
  std::optional<std::vector<TemperamentKind>> heterogeneous;
};

/// Parses scenario text. Unknown sections or keys are rejected. Throws ConfigError.
ScenarioConfig parse_scenario(const std::string& text);

ScenarioConfig load_scenario_file(const std::filesystem::path& path);

/// Loads the world described by `config` for a run with `agent_count` agents.
World load_world(const ScenarioConfig& config, std::uint64_t seed, std::size_t agent_count);

}  // namespace emosim
