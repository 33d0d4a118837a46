#include "evrc/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "evrc/error.hpp"
#include "evrc/generator.hpp"
#include "json.hpp"

namespace evrc {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Usage, "cannot open file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  require(out.good(), ErrorKind::Usage, "cannot write file: " + path);
  out << content;
}

}  // namespace

InstanceSpec convert_table(const ConvertOptions& options) {
  const ParameterPreset* preset = find_preset(options.preset);
  if (!preset) {
    std::string valid;
    for (const auto& name : preset_names()) valid += (valid.empty() ? "" : ", ") + name;
    fail(ErrorKind::Usage, "unknown preset '" + options.preset + "' (valid: " + valid + ")");
  }

  const auto records = parse_solomon_table(read_file(options.input_path));
  require(!records.empty(), ErrorKind::Format, "table: no data rows (need at least the depot)");

  const SolomonRecord& depot = records.front();
  std::vector<SolomonRecord> customers(records.begin() + 1, records.end());
  if (options.rows) {
    const auto [lo, hi] = *options.rows;
    require(lo >= 1 && hi >= lo, ErrorKind::Usage, "--rows: expected 1-based range a..b");
    require(static_cast<size_t>(hi) <= customers.size(), ErrorKind::Usage,
            "--rows: table has only " + std::to_string(customers.size()) + " customer rows");
    customers.assign(records.begin() + lo, records.begin() + hi + 1);
  }

  InstanceSpec instance;
  instance.id = options.id;
  if (instance.id.empty()) {
    instance.id = fs::path(options.input_path).stem().string() + "-" + options.preset + "-r" +
                  std::to_string(customers.size());
  }
  instance.network.nodes.push_back({depot.id + "-start", depot.x, depot.y});
  instance.network.nodes.push_back({depot.id + "-end", depot.x, depot.y});
  instance.start_depot = depot.id + "-start";
  instance.end_depot = depot.id + "-end";
  for (const auto& customer : customers) {
    instance.network.nodes.push_back({customer.id, customer.x, customer.y});
    RequestSpec request;
    request.node = customer.id;
    request.pickup_time = customer.ready_time;  // verbatim, minutes
    request.revenue = preset->revenue;
    instance.requests.push_back(request);
  }

  instance.fleet = preset->fleet;
  if (options.fleet_size) instance.fleet.count = *options.fleet_size;
  instance.weights = preset->weights;
  instance = assign_chargers(std::move(instance), preset->chargers);
  instance.horizon = options.horizon ? *options.horizon : generous_horizon(instance);
  validate(instance);
  return instance;
}

SolveOutcome run_solve(const InstanceSpec& instance, const SolveOptions& options) {
  std::vector<std::string> methods;
  if (options.method == "all") {
    methods = {"tlp", "ilp", "oracle"};
  } else {
    methods = {options.method};
  }
  for (const auto& method : methods) {
    require(method == "tlp" || method == "ilp" || method == "oracle", ErrorKind::Usage,
            "unknown method '" + method + "' (tlp, ilp, oracle, all)");
  }

  SolveOutcome outcome;
  outcome.report.instance_id = instance.id;
  outcome.report.cost_scale = options.config.cost_scale;
  outcome.report.config = options.config;

  for (const auto& method : methods) {
    MethodRow row;
    row.method = method;
    try {
      Solution solution;
      if (method == "tlp") {
        solution = solve_tlp(instance, options.config);
      } else if (method == "ilp") {
        solution = solve_ilp(instance, options.config);
      } else {
        solution = enumerate_exact(instance, options.budget, options.config);
      }
      const bool feasible = check_feasibility(solution, instance, options.config).empty();
      row = make_row(solution, feasible, options.detail);
      if (!feasible) outcome.exit_code = std::max(outcome.exit_code, 2);
    } catch (const Error& e) {
      row.status = e.kind() == ErrorKind::Budget ? "budget"
                   : e.kind() == ErrorKind::Infeasible ? "infeasible"
                                                       : "error";
      outcome.exit_code = std::max(outcome.exit_code, e.exit_code());
    }
    outcome.report.rows.push_back(std::move(row));
  }
  attach_gaps(outcome.report);
  return outcome;
}

namespace {

struct SweepEntry {
  InstanceSpec instance;
  bool oracle_ok = true;
};

std::vector<SweepEntry> load_suite(const BenchOptions& options) {
  std::vector<SweepEntry> entries;
  const fs::path dir(options.suite_dir);
  require(fs::is_directory(dir), ErrorKind::Usage, "suite: not a directory: " + options.suite_dir);

  const fs::path sweep_path = dir / "sweep.json";
  if (fs::exists(sweep_path)) {
    Json sweep;
    try {
      sweep = Json::parse(read_file(sweep_path.string()));
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorKind::Format, std::string("sweep.json: ") + e.what());
    }
    GeneratorConfig base;
    if (sweep.contains("fleet_size")) base.fleet_size = sweep.at("fleet_size").get<int>();
    if (sweep.contains("corridor_km")) base.corridor_km = sweep.at("corridor_km").get<double>();
    if (sweep.contains("clusters")) base.cluster_count = sweep.at("clusters").get<int>();
    if (sweep.contains("id_prefix")) base.id_prefix = sweep.at("id_prefix").get<std::string>();
    require(sweep.contains("request_counts") && sweep.at("request_counts").is_array(),
            ErrorKind::Format, "sweep.json: request_counts: expected array");
    require(sweep.contains("seeds") && sweep.at("seeds").is_array(), ErrorKind::Format,
            "sweep.json: seeds: expected array");
    for (const auto& count : sweep.at("request_counts")) {
      for (const auto& seed : sweep.at("seeds")) {
        GeneratorConfig config = base;
        config.request_count = count.get<int>();
        config.seed = seed.get<std::uint64_t>() + options.seed_offset;
        entries.push_back({generate_instance(config), true});
      }
    }
    return entries;
  }

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  require(!files.empty(), ErrorKind::Usage,
          "suite: no instance documents or sweep.json in " + options.suite_dir);
  for (const auto& file : files) {
    entries.push_back({load_instance_file(file.string()), true});
  }
  return entries;
}

}  // namespace

BenchOutcome run_bench(const BenchOptions& options) {
  std::vector<SweepEntry> suite = load_suite(options);

  SolveOptions solve_options;
  solve_options.config = options.config;
  solve_options.budget = options.budget;
  solve_options.detail = false;

  struct Keyed {
    std::string instance;
    std::string method;
    std::string row;
    std::string report_json;
  };
  std::vector<Keyed> rows;
  int failures = 0;

  for (const auto& entry : suite) {
    RunReport report;
    report.instance_id = entry.instance.id;
    report.cost_scale = options.config.cost_scale;
    report.config = options.config;
    for (const auto& method : options.methods) {
      solve_options.method = method;
      SolveOutcome outcome = run_solve(entry.instance, solve_options);
      report.rows.push_back(outcome.report.rows.front());
      if (outcome.exit_code != 0) ++failures;
    }
    attach_gaps(report);
    const std::string report_json = report_to_json(report);
    for (const auto& row : report.rows) {
      rows.push_back({report.instance_id, row.method, bench_csv_row(report.instance_id, row),
                      report_json});
    }
  }

  std::sort(rows.begin(), rows.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.instance, a.method) < std::tie(b.instance, b.method);
  });

  std::string csv = kBenchCsvHeader;
  for (const auto& row : rows) csv += row.row;

  if (!options.out_csv.empty()) {
    write_file(options.out_csv, csv);
    if (options.per_instance_reports) {
      const fs::path dir = fs::path(options.out_csv).parent_path();
      std::map<std::string, std::string> reports;
      for (const auto& row : rows) reports[row.instance] = row.report_json;
      for (const auto& [id, json] : reports) {
        write_file((dir / (id + ".report.json")).string(), json);
      }
    }
  }

  BenchOutcome outcome;
  outcome.csv = std::move(csv);
  outcome.instances = static_cast<int>(suite.size());
  outcome.failures = failures;
  return outcome;
}

}  // namespace evrc
