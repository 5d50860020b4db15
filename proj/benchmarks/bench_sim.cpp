#include <benchmark/benchmark.h>

#include <map>

#include "emosim/harness.hpp"
#include "emosim/scenario.hpp"

using namespace emosim;

namespace {

const ScenarioConfig& config() {
  static const ScenarioConfig cfg = load_scenario_file(EMOSIM_SCENARIO_DIR "/scenario2.ini");
  return cfg;
}

void BM_SenseAll(benchmark::State& state) {
  World world = load_world(config(), 1, kTeamSize);
  for (auto _ : state) benchmark::DoNotOptimize(sense_all(world));
}
BENCHMARK(BM_SenseAll);

void BM_StepWorld(benchmark::State& state) {
  World world = load_world(config(), 1, kTeamSize);
  world.start_all();
  std::map<AgentId, MotorCommand> commands;
  for (AgentId i = 0; i < static_cast<AgentId>(kTeamSize); ++i) commands[i] = {0.6, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(step_world(world, commands));
}
BENCHMARK(BM_StepWorld);

void BM_AgentStep(benchmark::State& state) {
  auto agent = make_agent(config(), TemperamentKind::Choleric, 1, 0);
  SensorReadings r;
  r.beacon_bearing = 0.3;
  r.vision.push_back({0.1, 2.0, EmotionLabel::Hostile});
  std::uint64_t cycle = 0;
  for (auto _ : state) benchmark::DoNotOptimize(agent.step(r, cycle++));
}
BENCHMARK(BM_AgentStep);

void BM_RunTrial(benchmark::State& state) {
  const auto team = TeamSpec::heterogeneous();
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(config(), team, seed++));
}
BENCHMARK(BM_RunTrial)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
