#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evrc/cli.hpp"
#include "evrc/error.hpp"

namespace {

using namespace evrc;

std::pair<int, int> parse_rows(const std::string& text) {
  const auto sep = text.find("..");
  require(sep != std::string::npos, ErrorKind::Usage, "--rows: expected a..b");
  try {
    return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 2))};
  } catch (const std::exception&) {
    fail(ErrorKind::Usage, "--rows: expected integers a..b");
  }
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  require(out.good(), ErrorKind::Usage, "cannot write file: " + path);
  out << content;
}

struct CommonFlags {
  std::string weights;
  bool idle_free = false;
  std::string phi_depot_arcs = "include";
  double cost_scale = 1e-6;

  void add(CLI::App* app) {
    app->add_option("--weights", weights, "Trade-off weights w1,w2,w3,w4 (default from instance)");
    app->add_flag("--idle-free", idle_free, "Zero the usage fee on the direct depot-depot arc");
    app->add_option("--phi-depot-arcs", phi_depot_arcs,
                    "Violation check coverage of depot departures: include|exclude")
        ->check(CLI::IsMember({"include", "exclude"}));
    app->add_option("--cost-scale", cost_scale, "Currency units per integer cost step");
  }

  SolveConfig config() const {
    SolveConfig config;
    config.idle_free = idle_free;
    config.phi_depot_arcs = phi_depot_arcs == "include";
    config.cost_scale = cost_scale;
    if (!weights.empty()) {
      Weights w;
      const int parsed =
          std::sscanf(weights.c_str(), "%lf,%lf,%lf,%lf", &w.charge_time, &w.charge_cost,
                      &w.travel_time, &w.usage);
      require(parsed == 4, ErrorKind::Usage, "--weights: expected w1,w2,w3,w4");
      config.weight_override = w;
    }
    return config;
  }
};

int dispatch(int argc, char** argv) {
  CLI::App app{"EV fleet routing-and-charging solver"};
  app.require_subcommand(1);

  // convert
  auto* convert = app.add_subcommand("convert", "Build an instance from a Solomon-style table");
  ConvertOptions convert_options;
  std::string rows_text, convert_out;
  int fleet_size = 0;
  double horizon = 0;
  convert->add_option("--in", convert_options.input_path, "Table path")->required();
  convert->add_option("--preset", convert_options.preset, "Parameter preset name");
  convert->add_option("--rows", rows_text, "Customer row range, 1-based: a..b");
  convert->add_option("--fleet-size", fleet_size, "Override the preset fleet size");
  convert->add_option("--horizon", horizon, "Override the computed horizon (minutes)");
  convert->add_option("--id", convert_options.id, "Instance id");
  convert->add_option("--out", convert_out, "Output path (stdout when omitted)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one instance and emit a report");
  std::string solve_instance, solve_method = "all", solve_out, dump_reduced;
  int oracle_max_requests = 12;
  bool no_detail = false;
  CommonFlags solve_flags;
  solve->add_option("--instance", solve_instance, "Instance document path")->required();
  solve->add_option("--method", solve_method, "tlp|ilp|oracle|all");
  solve->add_option("--oracle-max-requests", oracle_max_requests, "Oracle budget");
  solve->add_flag("--no-detail", no_detail, "Omit per-EV route/charge detail");
  solve->add_option("--out", solve_out, "Report path (stdout table otherwise)");
  solve->add_option("--dump-reduced", dump_reduced, "Write the reduced-graph arc table here");
  solve_flags.add(solve);

  // bench
  auto* bench = app.add_subcommand("bench", "Run a suite and emit an aggregate CSV");
  BenchOptions bench_options;
  std::string bench_methods = "tlp,ilp,oracle";
  std::uint64_t bench_seed = 0;
  int bench_oracle_max = 12;
  CommonFlags bench_flags;
  bench->add_option("--suite", bench_options.suite_dir, "Directory of instances or sweep.json")
      ->required();
  bench->add_option("--methods", bench_methods, "Comma list of tlp,ilp,oracle");
  bench->add_option("--seed", bench_seed, "Offset added to sweep seeds");
  bench->add_option("--oracle-max-requests", bench_oracle_max, "Oracle budget");
  bench->add_option("--out", bench_options.out_csv, "Aggregate CSV path")->required();
  bench_flags.add(bench);

  CLI11_PARSE(app, argc, argv);

  if (convert->parsed()) {
    if (!rows_text.empty()) convert_options.rows = parse_rows(rows_text);
    if (fleet_size > 0) convert_options.fleet_size = fleet_size;
    if (horizon > 0) convert_options.horizon = horizon;
    const InstanceSpec instance = convert_table(convert_options);
    write_or_print(convert_out, save_instance(instance));
    return 0;
  }

  if (solve->parsed()) {
    const InstanceSpec instance = load_instance_file(solve_instance);
    SolveOptions options;
    options.method = solve_method;
    options.config = solve_flags.config();
    options.budget.max_requests = oracle_max_requests;
    options.detail = !no_detail;
    if (!dump_reduced.empty()) {
      const ReducedGraph graph = build_reduced_graph(instance);
      write_or_print(dump_reduced,
                     dump_reduced_graph(graph, prune_conservative(graph, instance.fleet)));
    }
    const SolveOutcome outcome = run_solve(instance, options);
    if (solve_out.empty()) {
      std::cout << report_to_table(outcome.report);
    } else {
      write_or_print(solve_out, report_to_json(outcome.report));
      std::cout << report_to_table(outcome.report);
    }
    return outcome.exit_code;
  }

  if (bench->parsed()) {
    bench_options.methods.clear();
    std::stringstream stream(bench_methods);
    std::string method;
    while (std::getline(stream, method, ',')) {
      if (!method.empty()) bench_options.methods.push_back(method);
    }
    bench_options.config = bench_flags.config();
    bench_options.budget.max_requests = bench_oracle_max;
    bench_options.seed_offset = bench_seed;
    const BenchOutcome outcome = run_bench(bench_options);
    std::cout << "bench: " << outcome.instances << " instances, " << outcome.failures
              << " failed method runs, csv written to " << bench_options.out_csv << "\n";
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const evrc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
