#include "lppsim/report.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "lppsim/lattice.hpp"

namespace lppsim {

void StatReport::add(std::string experiment, std::string statistic, double value, double ci_lo,
                     double ci_hi, std::uint64_t n_replicas, std::uint64_t seed) {
  rows.push_back({std::move(experiment), std::move(statistic), value, ci_lo, ci_hi, n_replicas,
                  seed});
}

void StatReport::fail(std::string what) { failures.push_back(std::move(what)); }

double StatReport::value_of(const std::string& experiment, const std::string& statistic) const {
  for (const auto& row : rows) {
    if (row.experiment == experiment && row.statistic == statistic) return row.value;
  }
  throw DimensionError("StatReport: no row " + experiment + "/" + statistic);
}

void StatReport::append(const StatReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

namespace {

std::string format_double(double v) {
  // Shortest representation that round-trips, matching the JSON emitter so
  // CSV and JSON agree and re-runs are byte-identical.
  nlohmann::ordered_json j = v;
  return j.dump();
}

}  // namespace

std::string to_csv_string(const StatReport& report) {
  std::ostringstream out;
  out << "experiment,statistic,value,ci_lo,ci_hi,n_replicas,seed\n";
  for (const auto& row : report.rows) {
    out << row.experiment << ',' << row.statistic << ',' << format_double(row.value) << ','
        << format_double(row.ci_lo) << ',' << format_double(row.ci_hi) << ',' << row.n_replicas
        << ',' << row.seed << '\n';
  }
  return out.str();
}

std::string to_json_string(const StatReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"experiment", row.experiment},
                    {"statistic", row.statistic},
                    {"value", row.value},
                    {"ci_lo", row.ci_lo},
                    {"ci_hi", row.ci_hi},
                    {"n_replicas", row.n_replicas},
                    {"seed", row.seed}});
  }
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void emit_results(const StatReport& report, const std::string& path,
                  const std::string& format) {
  std::string body;
  if (format == "csv") {
    body = to_csv_string(report);
  } else if (format == "json") {
    body = to_json_string(report);
  } else {
    throw DimensionError("emit_results: unknown format '" + format + "'");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw NumericError("emit_results: cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw NumericError("emit_results: write failed for '" + path + "'");
}

StatReport load_json_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NumericError("load_json_report: cannot open '" + path + "'");
  nlohmann::ordered_json doc;
  in >> doc;
  StatReport report;
  for (const auto& row : doc.at("rows")) {
    report.rows.push_back({row.at("experiment").get<std::string>(),
                           row.at("statistic").get<std::string>(),
                           row.at("value").get<double>(), row.at("ci_lo").get<double>(),
                           row.at("ci_hi").get<double>(),
                           row.at("n_replicas").get<std::uint64_t>(),
                           row.at("seed").get<std::uint64_t>()});
  }
  return report;
}

}  // namespace lppsim
