#pragma once

// CSV output for trials and experiment matrices. Real numbers are written in
// shortest round-trip form, so parsing a file back yields the exact doubles.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "emosim/harness.hpp"

namespace emosim {

/// Shortest text that parses back to exactly `x`.
std::string format_exact(double x);

void write_metrics_csv(std::ostream& out, std::span<const MetricRow> rows);
/// Throws std::runtime_error naming the offending line.
std::vector<MetricRow> read_metrics_csv(std::istream& in);

void write_summary_csv(std::ostream& out, std::span<const CellSummary> cells);
void write_temperament_csv(std::ostream& out, std::span<const TemperamentSummary> rows);

/// Per-agent reported PAD every `stride` cycles, plus the final sample.
void write_pad_trajectory(std::ostream& out, const TrialMetrics& trial, std::uint32_t stride);

struct ReportFiles {
  std::filesystem::path metrics;
  std::filesystem::path summary;
  std::filesystem::path temperaments;
  std::vector<std::filesystem::path> trajectories;
};

/// Writes metrics.csv, summary.csv, performance_vs_pad.csv and one
/// trajectories/pad_traj_<scenario>_<team>_<seed>.csv per trial.
ReportFiles write_report(const std::filesystem::path& dir, const ExperimentReport& report,
                         bool full_trajectories = false);

}  // namespace emosim
