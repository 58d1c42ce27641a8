#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lppsim {

/// One emitted statistic. The 7-column schema is fixed:
/// experiment, statistic, value, ci_lo, ci_hi, n_replicas, seed.
struct StatRow {
  std::string experiment;
  std::string statistic;
  double value{0.0};
  double ci_lo{0.0};
  double ci_hi{0.0};
  std::uint64_t n_replicas{0};
  std::uint64_t seed{0};

  friend bool operator==(const StatRow&, const StatRow&) = default;
};

struct StatReport {
  std::vector<StatRow> rows;
  /// Tolerance verdicts accumulated by the experiments; not serialized.
  std::vector<std::string> failures;

  void add(std::string experiment, std::string statistic, double value, double ci_lo = 0.0,
           double ci_hi = 0.0, std::uint64_t n_replicas = 0, std::uint64_t seed = 0);
  /// Records a failed tolerance check (drives the CLI exit code).
  void fail(std::string what);
  bool passed() const { return failures.empty(); }
  /// Looks up a row's value; throws if absent.
  double value_of(const std::string& experiment, const std::string& statistic) const;
  void append(const StatReport& other);
};

/// Tail curve over a t-grid; successes may be fractional (quenched masses).
struct TailCurve {
  std::vector<double> t;
  std::vector<double> p;
  std::vector<double> ci_lo;
  std::vector<double> ci_hi;
  std::vector<double> successes;
  std::uint64_t replicas{0};
};

std::string to_csv_string(const StatReport& report);
std::string to_json_string(const StatReport& report);

void emit_results(const StatReport& report, const std::string& path,
                  const std::string& format);

StatReport load_json_report(const std::string& path);

}  // namespace lppsim
