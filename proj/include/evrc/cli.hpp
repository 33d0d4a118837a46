#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evrc/instance.hpp"
#include "evrc/oracle.hpp"
#include "evrc/report.hpp"

namespace evrc {

struct ConvertOptions {
  std::string input_path;
  std::string preset = "paper-table1-c200";
  std::optional<std::pair<int, int>> rows;  // 1-based inclusive range of customer rows
  std::optional<int> fleet_size;
  std::optional<double> horizon;
  std::string id;  // defaults to a name derived from the inputs
};

/// Combines table geometry and ready times with a parameter preset. The first
/// data row is the depot; remaining rows are customers.
InstanceSpec convert_table(const ConvertOptions& options);

struct SolveOptions {
  std::string method = "all";  // tlp | ilp | oracle | all
  SolveConfig config;
  OracleBudget budget;
  bool detail = true;
};

struct SolveOutcome {
  RunReport report;
  int exit_code = 0;
};

/// Runs the requested methods and assembles the report. Exit code is 0 only
/// when every requested method produced a feasible solution.
SolveOutcome run_solve(const InstanceSpec& instance, const SolveOptions& options);

struct BenchOptions {
  std::string suite_dir;
  std::vector<std::string> methods = {"tlp", "ilp", "oracle"};
  SolveConfig config;
  OracleBudget budget;
  std::uint64_t seed_offset = 0;
  std::string out_csv;
  bool per_instance_reports = true;
};

struct BenchOutcome {
  std::string csv;
  int instances = 0;
  int failures = 0;
};

/// Runs the suite (instance documents, or a sweep config named sweep.json)
/// and writes the aggregate CSV plus per-instance reports beside it.
BenchOutcome run_bench(const BenchOptions& options);

}  // namespace evrc
