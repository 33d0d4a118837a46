#include "evrc/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace evrc {

using Json = nlohmann::ordered_json;

MethodRow make_row(const Solution& solution, bool feasible, bool include_detail) {
  MethodRow row;
  row.method = Solution::method_name(solution.method);
  row.objective = solution.objective;
  row.served = static_cast<int>(solution.served.size());
  row.iterations = solution.iterations;
  row.wall_ms = solution.wall_ms;
  row.feasible = feasible;
  if (include_detail) {
    row.route_ids = solution.route_ids;
    for (const auto& plan : solution.plans) {
      row.route_charge_kwh.push_back(plan.charge_kwh);
      row.route_arrival_kwh.push_back(plan.arrival_kwh);
    }
  }
  return row;
}

void attach_gaps(RunReport& report) {
  const MethodRow* oracle = nullptr;
  for (const auto& row : report.rows) {
    if (row.method == "oracle" && row.status == "ok") oracle = &row;
  }
  if (!oracle) return;
  const double reference = oracle->objective.total();
  for (auto& row : report.rows) {
    if (row.status != "ok") continue;
    const double diff = row.objective.total() - reference;
    row.gap_abs = diff;
    if (reference != 0) {
      row.gap_rel = diff / std::abs(reference);
      row.normalized = 1.0 + *row.gap_rel;
    }
  }
}

namespace {

Json row_to_json(const MethodRow& row, bool include_wall) {
  Json j;
  j["method"] = row.method;
  j["status"] = row.status;
  j["objective"] = row.objective.total();
  j["terms"] = Json{{"charge_time", row.objective.charge_time},
                    {"charge_cost", row.objective.charge_cost},
                    {"travel_time", row.objective.travel_time},
                    {"usage_revenue", row.objective.usage_revenue}};
  j["served"] = row.served;
  j["iterations"] = row.iterations;
  if (include_wall) j["wall_ms"] = row.wall_ms;
  j["feasible"] = row.feasible;
  if (row.gap_rel) j["gap_rel"] = *row.gap_rel;
  if (row.gap_abs) j["gap_abs"] = *row.gap_abs;
  if (row.normalized) j["normalized"] = *row.normalized;
  if (!row.route_ids.empty()) {
    Json routes = Json::array();
    for (size_t r = 0; r < row.route_ids.size(); ++r) {
      Json route;
      route["nodes"] = row.route_ids[r];
      if (r < row.route_charge_kwh.size()) {
        route["charge_kwh"] = row.route_charge_kwh[r];
        route["arrival_kwh"] = row.route_arrival_kwh[r];
      }
      routes.push_back(route);
    }
    j["routes"] = routes;
  }
  return j;
}

}  // namespace

std::string report_to_json(const RunReport& report, bool include_wall) {
  Json j;
  j["schema"] = report.schema;
  j["instance"] = report.instance_id;
  j["cost_scale"] = report.cost_scale;
  j["config"] = Json{{"idle_free", report.config.idle_free},
                     {"phi_depot_arcs", report.config.phi_depot_arcs ? "include" : "exclude"}};
  Json rows = Json::array();
  for (const auto& row : report.rows) rows.push_back(row_to_json(row, include_wall));
  j["methods"] = rows;
  return j.dump(2) + "\n";
}

std::string report_to_table(const RunReport& report) {
  std::ostringstream out;
  out << "instance: " << report.instance_id << "\n";
  out << std::left << std::setw(8) << "method" << std::right << std::setw(14) << "objective"
      << std::setw(10) << "served" << std::setw(8) << "iters" << std::setw(12) << "wall_ms"
      << std::setw(10) << "feasible" << std::setw(12) << "gap" << "\n";
  for (const auto& row : report.rows) {
    out << std::left << std::setw(8) << row.method << std::right;
    if (row.status != "ok") {
      out << std::setw(14) << row.status << "\n";
      continue;
    }
    out << std::setw(14) << std::fixed << std::setprecision(3) << row.objective.total()
        << std::setw(10) << row.served << std::setw(8) << row.iterations << std::setw(12)
        << std::setprecision(2) << row.wall_ms << std::setw(10) << (row.feasible ? "yes" : "NO");
    if (row.gap_rel) {
      out << std::setw(11) << std::setprecision(2) << *row.gap_rel * 100 << "%";
    } else if (row.gap_abs) {
      out << std::setw(11) << std::setprecision(3) << *row.gap_abs << "a";
    } else {
      out << std::setw(12) << "-";
    }
    out << "\n";
  }
  return out.str();
}

const char* kBenchCsvHeader =
    "# evrc-bench-csv v1\n"
    "instance,method,status,objective,charge_time_term,charge_cost_term,travel_term,"
    "usage_revenue_term,normalized,gap_rel,gap_abs,served,iterations,wall_ms,feasible\n";

namespace {

std::string csv_number(double value) {
  std::ostringstream out;
  out << std::setprecision(12) << value;
  return out.str();
}

}  // namespace

std::string bench_csv_row(const std::string& instance_id, const MethodRow& row) {
  std::ostringstream out;
  out << instance_id << ',' << row.method << ',' << row.status << ',';
  if (row.status == "ok") {
    out << csv_number(row.objective.total()) << ',' << csv_number(row.objective.charge_time)
        << ',' << csv_number(row.objective.charge_cost) << ','
        << csv_number(row.objective.travel_time) << ','
        << csv_number(row.objective.usage_revenue) << ','
        << (row.normalized ? csv_number(*row.normalized) : "") << ','
        << (row.gap_rel ? csv_number(*row.gap_rel) : "") << ','
        << (row.gap_abs ? csv_number(*row.gap_abs) : "") << ',' << row.served << ','
        << row.iterations << ',' << csv_number(row.wall_ms) << ','
        << (row.feasible ? "yes" : "no");
  } else {
    out << ",,,,,,,,,," << csv_number(row.wall_ms) << ',';
  }
  out << '\n';
  return out.str();
}

}  // namespace evrc
