#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "emosim/errors.hpp"
#include "emosim/harness.hpp"
#include "emosim/net/client.hpp"
#include "emosim/net/server.hpp"
#include "emosim/net/tcp.hpp"
#include "emosim/pad.hpp"
#include "emosim/report.hpp"
#include "emosim/scenario.hpp"

namespace fs = std::filesystem;
using namespace emosim;

namespace {

std::vector<fs::path> default_scenarios() {
  const fs::path dir = EMOSIM_SCENARIO_DIR;
  return {dir / "scenario1.ini", dir / "scenario2.ini", dir / "scenario3.ini"};
}

void print_trial(const TrialMetrics& t) {
  std::printf("scenario %s  team %s  seed %llu  cycles %u\n", t.scenario.c_str(), t.team.c_str(),
              static_cast<unsigned long long>(t.seed), t.cycles_run);
  std::printf("%-5s %-12s %-8s %-8s %9s %9s %9s\n", "agent", "temperament", "finished", "time",
              "mean_P", "mean_A", "mean_D");
  for (std::size_t i = 0; i < t.agents.size(); ++i) {
    const auto& a = t.agents[i];
    const auto m = a.mean_pad();
    std::printf("%-5zu %-12s %-8s %-8u %9.4f %9.4f %9.4f\n", i,
                std::string(to_string(a.kind)).c_str(), a.finished ? "yes" : "no", a.time_cycles,
                m.pleasure, m.arousal, m.dominance);
  }
  std::printf("team mean %.3f  best %.0f  mean pairwise distance %.4f\n", t.score.mean,
              t.score.best, t.mean_pairwise_distance);
}

int cmd_run(const fs::path& scenario_path, const std::string& team_name, std::uint64_t seed,
            const std::string& mode, const std::string& out) {
  const auto scenario = load_scenario_file(scenario_path);
  const auto team = team_by_name(team_name, &scenario);
  TrialMetrics trial;
  if (mode == "local") {
    trial = run_trial(scenario, team, seed);
  } else if (mode == "memory") {
    trial = net::run_memory_trial(scenario, team, seed);
  } else {
    trial = net::run_tcp_trial(scenario, team, seed);
  }
  print_trial(trial);
  if (!out.empty()) {
    ExperimentReport report;
    report.trials.push_back(trial);
    report.rows = metric_rows(report.trials);
    report.cells = summarize_cells(report.rows);
    report.temperaments = summarize_temperaments(report.rows);
    write_report(out, report, true);
  }
  return 0;
}

int cmd_matrix(std::vector<fs::path> paths, std::uint64_t base_seed, std::size_t runs,
               unsigned threads, const fs::path& out, bool full_traj) {
  if (paths.empty()) paths = default_scenarios();
  std::vector<ScenarioConfig> scenarios;
  for (const auto& p : paths) scenarios.push_back(load_scenario_file(p));
  const auto teams = standard_teams(&scenarios.front());
  const auto start = std::chrono::steady_clock::now();
  const auto report = run_matrix(scenarios, teams, {runs, base_seed, threads});
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_report(out, report, full_traj);
  write_summary_csv(std::cout, report.cells);
  std::fprintf(stderr, "%zu trials in %.1f s, written to %s\n", report.trials.size(), secs,
               out.string().c_str());
  return 0;
}

int cmd_score(const fs::path& csv) {
  std::ifstream in(csv);
  if (!in) throw std::runtime_error("cannot open " + csv.string());
  const auto rows = read_metrics_csv(in);
  write_summary_csv(std::cout, summarize_cells(rows));
  std::cout << '\n';
  write_temperament_csv(std::cout, summarize_temperaments(rows));
  return 0;
}

int cmd_label(double p, double a, double d) {
  const PadVector v{p, a, d};
  if (!is_valid(v)) throw std::invalid_argument("PAD components must lie in [-1, 1]");
  const auto b = big_five_from_pad(v);
  std::printf("label %s\n", std::string(to_string(octant_label(v))).c_str());
  std::printf("extraversion %.6f\nagreeableness %.6f\nconscientiousness %.6f\n"
              "emotional_stability %.6f\nsophistication %.6f\n",
              b.extraversion, b.agreeableness, b.conscientiousness, b.emotional_stability,
              b.sophistication);
  return 0;
}

int cmd_serve(std::uint16_t port, const std::string& bind, const fs::path& scenario_path,
              const std::string& team_name, std::uint64_t seed, bool realtime) {
  const auto scenario = load_scenario_file(scenario_path);
  const auto team = team_by_name(team_name, &scenario);
  net::Inbox inbox;
  net::TcpListener listener(inbox, port, bind);
  std::fprintf(stderr, "listening on %s:%u, waiting for %zu agents\n", bind.c_str(),
               static_cast<unsigned>(listener.port()), team.composition.size());
  net::ServerOptions options;
  options.lockstep = !realtime;
  options.registration_timeout = std::chrono::hours(24);
  net::CycleServer server(scenario, team, seed, inbox, options);
  const auto trial = server.run();
  print_trial(trial);
  const auto& s = server.stats();
  std::fprintf(stderr, "stale %llu  duplicate %llu  parse errors %llu  late %llu  dropped %zu\n",
               static_cast<unsigned long long>(s.stale_messages),
               static_cast<unsigned long long>(s.duplicate_messages),
               static_cast<unsigned long long>(s.parse_errors),
               static_cast<unsigned long long>(s.late_agents), s.dropped.size());
  return 0;
}

int cmd_agent(const std::string& host, std::uint16_t port, const fs::path& scenario_path,
              const std::string& team_name, std::uint64_t seed, const std::string& name) {
  const auto scenario = load_scenario_file(scenario_path);
  const auto team = team_by_name(team_name, &scenario);
  auto channel = net::connect_tcp(host, port);
  const auto cycles =
      net::run_agent_client(*channel, net::local_factory(scenario, team, seed), name);
  std::fprintf(stderr, "answered %llu cycles\n", static_cast<unsigned long long>(cycles));
  return 0;
}

int cmd_view(const std::string& host, std::uint16_t port) {
  auto channel = net::connect_tcp(host, port);
  channel->write(net::encode(net::Register{net::Role::Viewer, "viewer"}));
  while (auto line = channel->read_line()) {
    const auto msg = net::decode(*line);
    if (const auto* frame = std::get_if<net::ViewFrame>(&msg)) {
      std::printf("cycle %llu\n", static_cast<unsigned long long>(frame->cycle));
      for (const auto& a : frame->agents) {
        std::printf("  %2d  (%7.3f, %7.3f)  %-10s  P %6.2f A %6.2f D %6.2f%s\n", a.id,
                    a.position.x, a.position.y, std::string(to_string(a.label)).c_str(),
                    a.pad.pleasure, a.pad.arousal, a.pad.dominance, a.finished ? "  done" : "");
      }
    } else if (std::holds_alternative<net::Finish>(msg)) {
      break;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temperament and emotion multi-agent simulator"};
  app.require_subcommand(1);

  fs::path scenario;
  std::string team = "heterogeneous";
  std::uint64_t seed = 1;

  auto* run = app.add_subcommand("run", "Run one trial and print per-agent results");
  std::string mode = "local";
  std::string run_out;
  run->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--team", team, "choleric|sanguine|phlegmatic|melancholic|heterogeneous");
  run->add_option("--seed", seed, "Trial seed");
  run->add_option("--mode", mode, "local, memory or tcp")
      ->check(CLI::IsMember({"local", "memory", "tcp"}));
  run->add_option("--out", run_out, "Directory for CSV output");

  auto* matrix = app.add_subcommand("matrix", "Run every scenario x team x seed combination");
  std::uint64_t base_seed = 1;
  std::size_t runs = 10;
  unsigned threads = 0;
  fs::path out;
  bool full_traj = false;
  std::vector<fs::path> scenarios;
  matrix->add_option("--base-seed", base_seed, "First seed")->required();
  matrix->add_option("--out", out, "Output directory")->required();
  matrix->add_option("--runs", runs, "Seeds per cell");
  matrix->add_option("--threads", threads, "Worker threads (0 = all cores)");
  matrix->add_option("--scenario", scenarios, "Scenario files (default: bundled three)")
      ->check(CLI::ExistingFile);
  matrix->add_flag("--full-traj", full_traj, "Write PAD trajectories at every cycle");

  auto* score = app.add_subcommand("score", "Summarize a metrics.csv file");
  fs::path csv;
  score->add_option("--csv", csv, "metrics.csv")->required()->check(CLI::ExistingFile);

  auto* label = app.add_subcommand("label", "Octant label and Big-Five scores of a PAD point");
  double p = 0.0, a = 0.0, d = 0.0;
  label->add_option("--p", p, "Pleasure in [-1, 1]")->required();
  label->add_option("--a", a, "Arousal in [-1, 1]")->required();
  label->add_option("--d", d, "Dominance in [-1, 1]")->required();

  auto* serve = app.add_subcommand("serve", "Host a trial for networked agents");
  std::uint16_t port = 7070;
  std::string bind = "127.0.0.1";
  bool realtime = false;
  serve->add_option("--port", port, "TCP port")->required();
  serve->add_option("--bind", bind, "Listen address");
  serve->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  serve->add_option("--team", team, "Team name");
  serve->add_option("--seed", seed, "Trial seed");
  serve->add_flag("--realtime", realtime, "Advance at the cycle period instead of lockstep");

  auto* agent = app.add_subcommand("agent", "Connect one agent client to a server");
  std::string host = "127.0.0.1";
  std::string name = "agent";
  agent->add_option("--host", host, "Server host");
  agent->add_option("--port", port, "Server port")->required();
  agent->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  agent->add_option("--team", team, "Team name");
  agent->add_option("--seed", seed, "Trial seed");
  agent->add_option("--name", name, "Client name");

  auto* view = app.add_subcommand("view", "Print the frames a server broadcasts");
  view->add_option("--host", host, "Server host");
  view->add_option("--port", port, "Server port")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(scenario, team, seed, mode, run_out);
    if (*matrix) return cmd_matrix(scenarios, base_seed, runs, threads, out, full_traj);
    if (*score) return cmd_score(csv);
    if (*label) return cmd_label(p, a, d);
    if (*serve) return cmd_serve(port, bind, scenario, team, seed, realtime);
    if (*agent) return cmd_agent(host, port, scenario, team, seed, name);
    if (*view) return cmd_view(host, port);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
