#include "emosim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "emosim/errors.hpp"
#include "emosim/resolution.hpp"
#include "emosim/seeding.hpp"

namespace emosim {

TeamSpec TeamSpec::make(std::string name, std::vector<TemperamentKind> composition) {
  if (composition.size() != kTeamSize)
    throw std::invalid_argument("team '" + name + "' must have exactly 9 members, got " +
                                std::to_string(composition.size()));
  return {std::move(name), std::move(composition)};
}

TeamSpec TeamSpec::homogeneous(TemperamentKind kind) {
  std::string name(to_string(kind));
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return make(std::move(name), std::vector<TemperamentKind>(kTeamSize, kind));
}

TeamSpec TeamSpec::heterogeneous() {
  constexpr std::array<TemperamentKind, 4> cycle = {
      TemperamentKind::Choleric, TemperamentKind::Sanguine, TemperamentKind::Phlegmatic,
      TemperamentKind::Melancholic};
  std::vector<TemperamentKind> kinds;
  for (std::size_t i = 0; i < kTeamSize; ++i) kinds.push_back(cycle[i % cycle.size()]);
  return make("heterogeneous", std::move(kinds));
}

std::vector<TeamSpec> standard_teams(const ScenarioConfig* scenario) {
  std::vector<TeamSpec> teams;
  for (auto kind : kAllTemperaments) teams.push_back(TeamSpec::homogeneous(kind));
  if (scenario != nullptr && scenario->heterogeneous) {
    teams.push_back(TeamSpec::make("heterogeneous", *scenario->heterogeneous));
  } else {
    teams.push_back(TeamSpec::heterogeneous());
  }
  return teams;
}

TeamSpec team_by_name(const std::string& name, const ScenarioConfig* scenario) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto& team : standard_teams(scenario)) {
    if (team.name == lower) return team;
  }
  throw std::invalid_argument("unknown team '" + name +
                              "' (choleric, sanguine, phlegmatic, melancholic, heterogeneous)");
}

TeamScore score_team(std::span<const AgentTime> times, std::uint32_t max_cycles) {
  if (times.empty()) throw ScoringError("cannot score an empty team");
  double sum = 0.0;
  double best = max_cycles;
  for (const auto& t : times) {
    if (t.finished && t.cycles > max_cycles)
      throw ScoringError("finish time " + std::to_string(t.cycles) + " exceeds the horizon");
    const double contribution = t.finished ? t.cycles : max_cycles;
    sum += contribution;
    if (t.finished) best = std::min(best, static_cast<double>(t.cycles));
  }
  return {sum / static_cast<double>(times.size()), best};
}

ReportedPad AgentTrace::mean_pad() const {
  ReportedPad m;
  if (pad.empty()) return m;
  for (const auto& p : pad) {
    m.pleasure += p.pleasure;
    m.arousal += p.arousal;
    m.dominance += p.dominance;
  }
  const double n = static_cast<double>(pad.size());
  return {m.pleasure / n, m.arousal / n, m.dominance / n};
}

TrialRecorder::TrialRecorder(std::string scenario, const TeamSpec& team, std::uint64_t seed,
                             std::uint32_t max_cycles) {
  metrics_.scenario = std::move(scenario);
  metrics_.team = team.name;
  metrics_.seed = seed;
  metrics_.max_cycles = max_cycles;
  for (auto kind : team.composition) {
    AgentTrace trace;
    trace.kind = kind;
    trace.time_cycles = max_cycles;
    metrics_.agents.push_back(std::move(trace));
  }
}

void TrialRecorder::record_pad(AgentId id, const PadVector& pad) {
  metrics_.agents.at(static_cast<std::size_t>(id)).pad.push_back(scale_for_report(pad));
}

void TrialRecorder::record_arrival(AgentId id, std::uint32_t cycle) {
  auto& trace = metrics_.agents.at(static_cast<std::size_t>(id));
  trace.finished = true;
  trace.time_cycles = cycle;
}

void TrialRecorder::record_positions(const World& world) {
  distance_sum_ += mean_pairwise_distance(world);
  ++distance_samples_;
}

TrialMetrics TrialRecorder::finish() {
  std::vector<AgentTime> times;
  for (const auto& a : metrics_.agents) times.push_back({a.finished, a.time_cycles});
  metrics_.score = score_team(times, metrics_.max_cycles);
  metrics_.mean_pairwise_distance =
      distance_samples_ == 0 ? 0.0 : distance_sum_ / static_cast<double>(distance_samples_);
  return std::move(metrics_);
}

void apply_agent_report(World& world, AgentId id, const PadVector& pad, double motor_ceiling,
                        double sensor_reach) {
  AgentBody& body = world.body(id);
  body.broadcast_label = octant_label(pad);
  body.motor_ceiling = std::clamp(motor_ceiling, 0.0, 1.0);
  body.sensor_reach = std::max(sensor_reach, 0.0);
}

AgentController make_agent(const ScenarioConfig& scenario, TemperamentKind kind,
                           std::uint64_t seed, std::size_t index) {
  auto rng = make_stream(seed, StreamTag::Profile, index);
  return AgentController(sample_profile(kind, rng, scenario.agent.temperament), scenario.agent);
}

double mean_pairwise_distance(const World& world) {
  double sum = 0.0;
  std::size_t pairs = 0;
  const auto bodies = world.bodies();
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (bodies[i].stopped) continue;
    for (std::size_t j = i + 1; j < bodies.size(); ++j) {
      if (bodies[j].stopped) continue;
      sum += distance(bodies[i].position, bodies[j].position);
      ++pairs;
    }
  }
  return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

TrialMetrics run_trial(const ScenarioConfig& scenario, const TeamSpec& team, std::uint64_t seed) {
  const std::size_t n = team.composition.size();
  World world = load_world(scenario, seed, n);
  world.start_all();

  std::vector<AgentController> agents;
  agents.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    agents.push_back(make_agent(scenario, team.composition[i], seed, i));

  enum class Phase { Active, Arrived, Retired };
  std::vector<Phase> phase(n, Phase::Active);
  TrialRecorder recorder(scenario.id, team, seed, scenario.max_cycles);

  auto readings = sense_all(world);
  std::uint32_t cycle = 0;
  for (; cycle < scenario.max_cycles; ++cycle) {
    std::map<AgentId, MotorCommand> commands;
    for (std::size_t i = 0; i < n; ++i) {
      if (phase[i] == Phase::Retired) continue;
      const auto id = static_cast<AgentId>(i);
      const AgentOutput out = quantize(agents[i].step(quantize(readings[i]), cycle));
      recorder.record_pad(id, out.pad);
      apply_agent_report(world, id, out.pad, out.motor_ceiling, out.sensor_reach);
      if (phase[i] == Phase::Active) {
        commands[id] = out.command;
      } else {
        phase[i] = Phase::Retired;
      }
    }
    if (std::none_of(phase.begin(), phase.end(), [](Phase p) { return p == Phase::Active; }))
      break;

    readings = step_world(world, commands);
    recorder.record_positions(world);
    for (std::size_t i = 0; i < n; ++i) {
      if (phase[i] == Phase::Active && world.body(static_cast<AgentId>(i)).stopped) {
        phase[i] = Phase::Arrived;
        recorder.record_arrival(static_cast<AgentId>(i), cycle + 1);
      }
    }
  }
  recorder.set_cycles_run(std::min<std::uint32_t>(cycle, scenario.max_cycles));
  return recorder.finish();
}

ExperimentReport run_matrix(std::span<const ScenarioConfig> scenarios,
                            std::span<const TeamSpec> teams, const MatrixOptions& options) {
  struct Job {
    const ScenarioConfig* scenario;
    const TeamSpec* team;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& s : scenarios)
    for (const auto& t : teams)
      for (std::size_t r = 0; r < options.runs; ++r)
        jobs.push_back({&s, &t, options.base_seed + r});

  std::vector<TrialMetrics> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::size_t failed_job = jobs.size();

  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        results[j] = run_trial(*jobs[j].scenario, *jobs[j].team, jobs[j].seed);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (j < failed_job) {
          failed_job = j;
          failure = std::current_exception();
        }
        next = jobs.size();
      }
    }
  };

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  if (failure) {
    const Job& job = jobs[failed_job];
    std::string what = "trial failed";
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw TrialError(job.scenario->id, job.team->name, job.seed,
                     "trial (" + job.scenario->id + ", " + job.team->name + ", seed " +
                         std::to_string(job.seed) + ") failed: " + what);
  }

  ExperimentReport report;
  report.trials = std::move(results);
  report.rows = metric_rows(report.trials);
  report.cells = summarize_cells(report.rows);
  report.temperaments = summarize_temperaments(report.rows);
  return report;
}

std::vector<MetricRow> metric_rows(std::span<const TrialMetrics> trials) {
  std::vector<MetricRow> rows;
  for (const auto& t : trials) {
    for (std::size_t i = 0; i < t.agents.size(); ++i) {
      const auto& a = t.agents[i];
      rows.push_back({t.scenario, t.team, t.seed, i, a.kind, a.finished, a.time_cycles,
                      t.max_cycles, a.mean_pad()});
    }
  }
  return rows;
}

namespace {

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

// Sample standard deviation; zero for a single run.
Stats stats(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

void accumulate(ReportedPad& acc, const ReportedPad& p) {
  acc.pleasure += p.pleasure;
  acc.arousal += p.arousal;
  acc.dominance += p.dominance;
}

ReportedPad divide(const ReportedPad& acc, std::size_t n) {
  if (n == 0) return {};
  const double d = static_cast<double>(n);
  return {acc.pleasure / d, acc.arousal / d, acc.dominance / d};
}

}  // namespace

std::vector<CellSummary> summarize_cells(std::span<const MetricRow> rows) {
  std::vector<CellSummary> cells;
  std::size_t i = 0;
  while (i < rows.size()) {
    CellSummary cell;
    cell.scenario = rows[i].scenario;
    cell.team = rows[i].team;
    std::vector<double> means;
    std::vector<double> bests;
    ReportedPad pad_sum;
    std::size_t agents = 0;
    std::size_t finished = 0;
    while (i < rows.size() && rows[i].scenario == cell.scenario && rows[i].team == cell.team) {
      const std::uint64_t seed = rows[i].seed;
      const std::uint32_t horizon = rows[i].max_cycles;
      std::vector<AgentTime> times;
      for (; i < rows.size() && rows[i].scenario == cell.scenario &&
             rows[i].team == cell.team && rows[i].seed == seed;
           ++i) {
        times.push_back({rows[i].finished, rows[i].time_cycles});
        accumulate(pad_sum, rows[i].mean_pad);
        ++agents;
        if (rows[i].finished) ++finished;
      }
      const auto score = score_team(times, horizon);
      means.push_back(score.mean);
      bests.push_back(score.best);
      ++cell.runs;
    }
    const auto m = stats(means);
    const auto b = stats(bests);
    cell.mean_team_mean = m.mean;
    cell.std_team_mean = m.stddev;
    cell.mean_best = b.mean;
    cell.std_best = b.stddev;
    cell.finish_rate = agents == 0 ? 0.0 : static_cast<double>(finished) / static_cast<double>(agents);
    cell.mean_pad = divide(pad_sum, agents);
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::vector<TemperamentSummary> summarize_temperaments(std::span<const MetricRow> rows) {
  std::vector<TemperamentSummary> out;
  std::size_t i = 0;
  while (i < rows.size()) {
    const std::string scenario = rows[i].scenario;
    const std::string team = rows[i].team;
    std::array<ReportedPad, 4> pad{};
    std::array<double, 4> time{};
    std::array<std::size_t, 4> count{};
    for (; i < rows.size() && rows[i].scenario == scenario && rows[i].team == team; ++i) {
      const auto k = static_cast<std::size_t>(rows[i].kind);
      accumulate(pad[k], rows[i].mean_pad);
      time[k] += rows[i].time_cycles;
      ++count[k];
    }
    for (auto kind : kAllTemperaments) {
      const auto k = static_cast<std::size_t>(kind);
      if (count[k] == 0) continue;
      out.push_back({scenario, team, kind, count[k], time[k] / static_cast<double>(count[k]),
                     divide(pad[k], count[k])});
    }
  }
  return out;
}

}  // namespace emosim
