#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "emosim/report.hpp"

using namespace emosim;

namespace {

std::vector<MetricRow> random_rows(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pad(-10.0, 10.0);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<std::uint32_t> time(0, 1800);
  std::vector<MetricRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    MetricRow r;
    r.scenario = "scenario" + std::to_string(i / 90);
    r.team = i % 90 < 45 ? "sanguine" : "heterogeneous";
    r.seed = 1 + (i / 9) % 5;
    r.agent = i % 9;
    r.kind = static_cast<TemperamentKind>(kind(rng));
    r.finished = time(rng) < 1200;
    r.time_cycles = r.finished ? time(rng) : 1800;
    r.mean_pad = {pad(rng), pad(rng), pad(rng)};
    rows.push_back(r);
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(FormatExact, RoundTripsEveryDouble) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t bits = rng();
    double x;
    std::memcpy(&x, &bits, sizeof x);
    if (!std::isfinite(x)) continue;
    const auto text = format_exact(x);
    double back = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), back);
    ASSERT_EQ(back, x) << text;
  }
  EXPECT_EQ(format_exact(0.1), "0.1");
  EXPECT_EQ(format_exact(-2.5), "-2.5");
  EXPECT_EQ(format_exact(1800.0), "1800");
}

TEST(MetricsCsv, RoundTrip) {
  const auto rows = random_rows(1, 180);
  std::stringstream s;
  write_metrics_csv(s, rows);
  EXPECT_EQ(read_metrics_csv(s), rows);
}

TEST(MetricsCsv, SummariesRecomputeExactly) {
  const auto rows = random_rows(2, 270);
  std::stringstream s;
  write_metrics_csv(s, rows);
  const auto parsed = read_metrics_csv(s);
  EXPECT_EQ(summarize_cells(parsed), summarize_cells(rows));
  EXPECT_EQ(summarize_temperaments(parsed), summarize_temperaments(rows));
}

TEST(MetricsCsv, RejectsDamage) {
  const std::string header =
      "scenario,team,seed,agent,temperament,finished,time_cycles,max_cycles,mean_p,mean_a,mean_d\n";
  auto bad = [&](const std::string& body) {
    std::istringstream in(header + body);
    return read_metrics_csv(in);
  };
  EXPECT_NO_THROW(bad("s,t,1,0,Sanguine,1,20,1800,0.5,-1,2\n"));
  EXPECT_THROW(bad("s,t,1,0,Sanguine,1,20,1800,0.5,-1\n"), std::runtime_error);
  EXPECT_THROW(bad("s,t,x,0,Sanguine,1,20,1800,0.5,-1,2\n"), std::runtime_error);
  EXPECT_THROW(bad("s,t,1,0,Grumpy,1,20,1800,0.5,-1,2\n"), std::runtime_error);
  EXPECT_THROW(bad("s,t,1,0,Sanguine,yes,20,1800,0.5,-1,2\n"), std::runtime_error);
  std::istringstream no_header("s,t,1,0,Sanguine,1,20,1800,0.5,-1,2\n");
  EXPECT_THROW(read_metrics_csv(no_header), std::runtime_error);
  try {
    bad("s,t,1,0,Sanguine,1,20,1800,0.5,-1,2\ns,t,1,0,Sanguine,1,2q,1800,0,0,0\n");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Trajectory, StrideKeepsFinalSample) {
  TrialMetrics t;
  AgentTrace a;
  a.kind = TemperamentKind::Phlegmatic;
  for (int c = 0; c < 25; ++c) a.pad.push_back({c * 0.1, 0, 0});
  t.agents.push_back(a);
  std::stringstream s;
  write_pad_trajectory(s, t, 10);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(s, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "cycle,agent,temperament,p,a,d");
  EXPECT_EQ(lines[1], "0,0,Phlegmatic,0,0,0");
  EXPECT_EQ(lines[2].substr(0, 3), "10,");
  EXPECT_EQ(lines[4].substr(0, 3), "24,");
}

TEST(Report, WritesAllFilesDeterministically) {
  auto cfg = load_scenario_file(EMOSIM_SCENARIO_DIR "/scenario1.ini");
  cfg.max_cycles = 60;
  const std::vector<ScenarioConfig> scenarios = {cfg};
  const std::vector<TeamSpec> teams = {TeamSpec::heterogeneous()};
  const auto report = run_matrix(scenarios, teams, {2, 1, 1});
  const auto base = std::filesystem::temp_directory_path() /
                    ("emosim_report_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  const auto files_a = write_report(base / "a", report);
  const auto files_b = write_report(base / "b", report);
  ASSERT_EQ(files_a.trajectories.size(), 2u);
  EXPECT_EQ(files_a.trajectories[0].filename(), "pad_traj_scenario1_heterogeneous_1.csv");
  EXPECT_EQ(slurp(files_a.metrics), slurp(files_b.metrics));
  EXPECT_EQ(slurp(files_a.summary), slurp(files_b.summary));
  EXPECT_EQ(slurp(files_a.temperaments), slurp(files_b.temperaments));
  EXPECT_EQ(slurp(files_a.trajectories[1]), slurp(files_b.trajectories[1]));

  std::ifstream in(files_a.metrics);
  const auto rows = read_metrics_csv(in);
  EXPECT_EQ(rows, report.rows);
  EXPECT_EQ(summarize_cells(rows), report.cells);
  std::filesystem::remove_all(base);
}
