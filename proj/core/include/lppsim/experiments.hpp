#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lppsim/busemann.hpp"
#include "lppsim/report.hpp"

namespace lppsim {

struct ExperimentConfig {
  std::string experiment;
  ModelKind model{ModelKind::LPP};
  int n{256};
  int r{-1};  // -1 resolves to n/2
  double rho{0.5};
  double delta0{0.01};
  std::vector<double> t_grid{0.6, 0.8, 1.0, 1.2, 1.4, 1.6};
  std::vector<int> sizes{64, 128, 256, 512};  // variance-scaling sweep
  std::uint64_t replicas{10000};
  std::uint64_t seed{1};
  int threads{0};  // 0 -> hardware concurrency
  double window_factor{8.0};
  double epsilon{0.5};  // polymer high-probability display threshold
  std::string out;
  std::string format{"json"};

  int resolved_r() const { return r >= 0 ? r : n / 2; }

  /// Loads fields present in a JSON object file; absent fields keep their
  /// current values.
  void load_json_file(const std::string& path);
};

int resolve_threads(int requested);

/// Runs fn(replica_index) for every replica on a worker pool. Results must
/// be written into per-replica slots so aggregation order is deterministic.
void parallel_replicas(std::uint64_t replicas, int threads,
                       const std::function<void(std::uint64_t)>& fn);

/// Midpoint transversal-fluctuation tail for the LPP geodesic:
/// p(t) = P(first-entry column at row r minus r >= t r^{2/3}).
StatReport run_tail_experiment_lpp(const ExperimentConfig& cfg);

/// Same event under the quenched polymer measure: reports the annealed mean
/// E[q(t)] and the frequency of q(t) >= 1 - epsilon.
StatReport run_tail_experiment_polymer(const ExperimentConfig& cfg);

/// Stationary expectations, increment stationarity (KS), variance scaling.
StatReport run_stationary_validation(const ExperimentConfig& cfg);

/// Exit-index concentration around the characteristic intersection point.
StatReport run_exit_concentration(const ExperimentConfig& cfg);

/// Busemann marginals, stationary-geodesic equivalence, primal-dual
/// disjointness, polymer chain-law identity.
StatReport run_duality_suite(const ExperimentConfig& cfg);

/// Radon-Nikodym normalization and second moments, tilted event frequencies,
/// Cauchy-Schwarz slack.
StatReport run_tilt_suite(const ExperimentConfig& cfg);

/// Fast self-contained oracle/property suite (the `validate` subcommand).
StatReport run_validation_suite(const ExperimentConfig& cfg);

}  // namespace lppsim
