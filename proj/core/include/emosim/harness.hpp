#pragma once

// Experiment driver: teams, seeded trials, team scoring and batch matrices.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emosim/mind.hpp"
#include "emosim/pad.hpp"
#include "emosim/scenario.hpp"
#include "emosim/temperament.hpp"
#include "emosim/world.hpp"

namespace emosim {

inline constexpr std::size_t kTeamSize = 9;

struct TeamSpec {
  std::string name;
  std::vector<TemperamentKind> composition;

  /// Throws std::invalid_argument unless exactly nine members are given.
  static TeamSpec make(std::string name, std::vector<TemperamentKind> composition);
  static TeamSpec homogeneous(TemperamentKind kind);
  /// Cyclic C, S, P, M assignment over nine slots.
  static TeamSpec heterogeneous();
};

/// Choleric, Sanguine, Phlegmatic and Melancholic homogeneous teams plus the
/// heterogeneous team (from `scenario` when it overrides the composition).
std::vector<TeamSpec> standard_teams(const ScenarioConfig* scenario = nullptr);

/// Looks up a standard team by case-insensitive name. Throws std::invalid_argument.
TeamSpec team_by_name(const std::string& name, const ScenarioConfig* scenario = nullptr);

struct AgentTime {
  bool finished = false;
  std::uint32_t cycles = 0;  // ignored when not finished
};

struct TeamScore {
  double mean = 0.0;
  double best = 0.0;
  friend bool operator==(const TeamScore&, const TeamScore&) = default;
};

/// Unfinished agents contribute `max_cycles`; best is the fastest finisher or
/// `max_cycles` when nobody finished. Throws ScoringError on empty input or
/// times beyond `max_cycles`.
TeamScore score_team(std::span<const AgentTime> times,
                     std::uint32_t max_cycles = kDefaultMaxCycles);

struct AgentTrace {
  TemperamentKind kind = TemperamentKind::Sanguine;
  bool finished = false;
  std::uint32_t time_cycles = 0;  // arrival cycle, or max_cycles when unfinished
  std::vector<ReportedPad> pad;   // one entry per processed cycle

  ReportedPad mean_pad() const;
  friend bool operator==(const AgentTrace&, const AgentTrace&) = default;
};

struct TrialMetrics {
  std::string scenario;
  std::string team;
  std::uint64_t seed = 0;
  std::uint32_t max_cycles = kDefaultMaxCycles;
  std::uint32_t cycles_run = 0;
  std::vector<AgentTrace> agents;
  TeamScore score;
  double mean_pairwise_distance = 0.0;  // time average over cycles, moving agents only

  friend bool operator==(const TrialMetrics&, const TrialMetrics&) = default;
};

/// Accumulates a trial's metrics as the cycle driver runs; shared by the
/// in-process engine and the network server.
class TrialRecorder {
 public:
  TrialRecorder(std::string scenario, const TeamSpec& team, std::uint64_t seed,
                std::uint32_t max_cycles);

  void record_pad(AgentId id, const PadVector& pad);
  void record_arrival(AgentId id, std::uint32_t cycle);
  void record_positions(const World& world);
  void set_cycles_run(std::uint32_t cycles) { metrics_.cycles_run = cycles; }

  TrialMetrics finish();

 private:
  TrialMetrics metrics_;
  double distance_sum_ = 0.0;
  std::uint64_t distance_samples_ = 0;
};

/// Stores an agent's self-report on its body: broadcast label, motor ceiling
/// (capped at 1) and sensor reach.
void apply_agent_report(World& world, AgentId id, const PadVector& pad, double motor_ceiling,
                        double sensor_reach);

/// Builds the controller for slot `index` of a trial seeded with `seed`.
AgentController make_agent(const ScenarioConfig& scenario, TemperamentKind kind,
                           std::uint64_t seed, std::size_t index);

/// Mean center-to-center distance over all pairs of bodies that have not arrived.
double mean_pairwise_distance(const World& world);

/// Runs one team to completion or `max_cycles`. Deterministic per seed.
TrialMetrics run_trial(const ScenarioConfig& scenario, const TeamSpec& team, std::uint64_t seed);

struct CellSummary {
  std::string scenario;
  std::string team;
  std::size_t runs = 0;
  double mean_team_mean = 0.0;
  double std_team_mean = 0.0;
  double mean_best = 0.0;
  double std_best = 0.0;
  double finish_rate = 0.0;
  ReportedPad mean_pad;
  friend bool operator==(const CellSummary&, const CellSummary&) = default;
};

/// Mean time and PAD of one temperament inside one cell.
struct TemperamentSummary {
  std::string scenario;
  std::string team;
  TemperamentKind kind = TemperamentKind::Sanguine;
  std::size_t agents = 0;
  double mean_time = 0.0;
  ReportedPad mean_pad;
  friend bool operator==(const TemperamentSummary&, const TemperamentSummary&) = default;
};

/// One row of metrics.csv: an agent in a trial.
struct MetricRow {
  std::string scenario;
  std::string team;
  std::uint64_t seed = 0;
  std::size_t agent = 0;
  TemperamentKind kind = TemperamentKind::Sanguine;
  bool finished = false;
  std::uint32_t time_cycles = 0;
  std::uint32_t max_cycles = kDefaultMaxCycles;
  ReportedPad mean_pad;
  friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

struct ExperimentReport {
  std::vector<TrialMetrics> trials;  // ordered by (scenario, team, seed)
  std::vector<MetricRow> rows;
  std::vector<CellSummary> cells;
  std::vector<TemperamentSummary> temperaments;
};

struct MatrixOptions {
  std::size_t runs = 10;
  std::uint64_t base_seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Runs every (scenario, team, seed) combination with seeds
/// base_seed .. base_seed + runs - 1. Throws TrialError naming the failing cell.
ExperimentReport run_matrix(std::span<const ScenarioConfig> scenarios,
                            std::span<const TeamSpec> teams, const MatrixOptions& options);

std::vector<MetricRow> metric_rows(std::span<const TrialMetrics> trials);

/// Aggregates are a function of the metric rows alone, so recomputing them
/// from a parsed metrics.csv reproduces the report.
std::vector<CellSummary> summarize_cells(std::span<const MetricRow> rows);
std::vector<TemperamentSummary> summarize_temperaments(std::span<const MetricRow> rows);

}  // namespace emosim
