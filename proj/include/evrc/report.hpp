#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evrc/solver.hpp"

namespace evrc {

/// One solved method in a run report. Gap columns appear when an oracle row
/// is present: relative to |oracle| when the oracle objective is nonzero,
/// otherwise as an absolute difference.
struct MethodRow {
  std::string method;
  std::string status = "ok";  // ok | infeasible | budget | error
  ObjectiveBreakdown objective;
  int served = 0;
  int iterations = 0;
  double wall_ms = 0;
  bool feasible = false;
  std::optional<double> gap_rel;
  std::optional<double> gap_abs;
  std::optional<double> normalized;  // 1 + gap_rel; 1.0 exactly for the oracle
  std::vector<std::vector<NodeId>> route_ids;
  std::vector<std::vector<double>> route_charge_kwh;
  std::vector<std::vector<double>> route_arrival_kwh;
};

struct RunReport {
  std::string schema = "evrc-report-v1";
  std::string instance_id;
  double cost_scale = 1e-6;
  SolveConfig config;
  std::vector<MethodRow> rows;
};

MethodRow make_row(const Solution& solution, bool feasible, bool include_detail);

/// Fills gap/normalized columns from the oracle row, when one exists.
void attach_gaps(RunReport& report);

std::string report_to_json(const RunReport& report, bool include_wall = true);
std::string report_to_table(const RunReport& report);

/// Versioned CSV for bench sweeps; one row per (instance, method), sorted.
extern const char* kBenchCsvHeader;
std::string bench_csv_row(const std::string& instance_id, const MethodRow& row);

}  // namespace evrc
