#include "emosim/report.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace emosim {

namespace {

constexpr std::string_view kMetricsHeader =
    "scenario,team,seed,agent,temperament,finished,time_cycles,max_cycles,mean_p,mean_a,mean_d";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <class T>
T parse_number(const std::string& text, std::size_t line_no) {
  T v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw std::runtime_error("metrics line " + std::to_string(line_no) + ": bad number '" +
                             text + "'");
  return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_exact(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

void write_metrics_csv(std::ostream& out, std::span<const MetricRow> rows) {
  out << kMetricsHeader << '\n';
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.team << ',' << r.seed << ',' << r.agent << ','
        << to_string(r.kind) << ',' << (r.finished ? 1 : 0) << ',' << r.time_cycles << ','
        << r.max_cycles << ',' << format_exact(r.mean_pad.pleasure) << ','
        << format_exact(r.mean_pad.arousal) << ',' << format_exact(r.mean_pad.dominance) << '\n';
  }
}

std::vector<MetricRow> read_metrics_csv(std::istream& in) {
  std::vector<MetricRow> rows;
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader)
    throw std::runtime_error("metrics: missing or unexpected header");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 11)
      throw std::runtime_error("metrics line " + std::to_string(line_no) + ": expected 11 fields");
    MetricRow r;
    r.scenario = f[0];
    r.team = f[1];
    r.seed = parse_number<std::uint64_t>(f[2], line_no);
    r.agent = parse_number<std::size_t>(f[3], line_no);
    const auto kind = parse_temperament(f[4]);
    if (!kind)
      throw std::runtime_error("metrics line " + std::to_string(line_no) +
                               ": unknown temperament '" + f[4] + "'");
    r.kind = *kind;
    if (f[5] != "0" && f[5] != "1")
      throw std::runtime_error("metrics line " + std::to_string(line_no) + ": finished must be 0 or 1");
    r.finished = f[5] == "1";
    r.time_cycles = parse_number<std::uint32_t>(f[6], line_no);
    r.max_cycles = parse_number<std::uint32_t>(f[7], line_no);
    r.mean_pad = {parse_number<double>(f[8], line_no), parse_number<double>(f[9], line_no),
                  parse_number<double>(f[10], line_no)};
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_summary_csv(std::ostream& out, std::span<const CellSummary> cells) {
  out << "scenario,team,runs,mean_time,std_time,mean_best,std_best,finish_rate,mean_p,mean_a,mean_d\n";
  for (const auto& c : cells) {
    out << c.scenario << ',' << c.team << ',' << c.runs << ',' << format_exact(c.mean_team_mean)
        << ',' << format_exact(c.std_team_mean) << ',' << format_exact(c.mean_best) << ','
        << format_exact(c.std_best) << ',' << format_exact(c.finish_rate) << ','
        << format_exact(c.mean_pad.pleasure) << ',' << format_exact(c.mean_pad.arousal) << ','
        << format_exact(c.mean_pad.dominance) << '\n';
  }
}

void write_temperament_csv(std::ostream& out, std::span<const TemperamentSummary> rows) {
  out << "scenario,team,temperament,agents,mean_time,mean_p,mean_a,mean_d\n";
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.team << ',' << to_string(r.kind) << ',' << r.agents << ','
        << format_exact(r.mean_time) << ',' << format_exact(r.mean_pad.pleasure) << ','
        << format_exact(r.mean_pad.arousal) << ',' << format_exact(r.mean_pad.dominance) << '\n';
  }
}

void write_pad_trajectory(std::ostream& out, const TrialMetrics& trial, std::uint32_t stride) {
  if (stride == 0) stride = 1;
  out << "cycle,agent,temperament,p,a,d\n";
  for (std::size_t i = 0; i < trial.agents.size(); ++i) {
    const auto& trace = trial.agents[i];
    for (std::size_t c = 0; c < trace.pad.size(); ++c) {
      if (c % stride != 0 && c + 1 != trace.pad.size()) continue;
      const auto& p = trace.pad[c];
      out << c << ',' << i << ',' << to_string(trace.kind) << ',' << format_exact(p.pleasure)
          << ',' << format_exact(p.arousal) << ',' << format_exact(p.dominance) << '\n';
    }
  }
}

ReportFiles write_report(const std::filesystem::path& dir, const ExperimentReport& report,
                         bool full_trajectories) {
  std::filesystem::create_directories(dir / "trajectories");
  ReportFiles files{dir / "metrics.csv", dir / "summary.csv", dir / "performance_vs_pad.csv", {}};
  {
    auto out = open_out(files.metrics);
    write_metrics_csv(out, report.rows);
  }
  {
    auto out = open_out(files.summary);
    write_summary_csv(out, report.cells);
  }
  {
    auto out = open_out(files.temperaments);
    write_temperament_csv(out, report.temperaments);
  }
  for (const auto& t : report.trials) {
    auto path = dir / "trajectories" /
                ("pad_traj_" + t.scenario + "_" + t.team + "_" + std::to_string(t.seed) + ".csv");
    auto out = open_out(path);
    write_pad_trajectory(out, t, full_trajectories ? 1 : 10);
    files.trajectories.push_back(std::move(path));
  }
  return files;
}

}  // namespace emosim
