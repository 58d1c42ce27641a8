#include "lppsim/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "lppsim/distributions.hpp"
#include "lppsim/lpp.hpp"
#include "lppsim/polymer.hpp"
#include "lppsim/special_functions.hpp"
#include "lppsim/stats.hpp"
#include "lppsim/tilt.hpp"
#include "lppsim/tolerances.hpp"

namespace lppsim {

void ExperimentConfig::load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NumericError("config: cannot open '" + path + "'");
  nlohmann::json doc;
  in >> doc;
  if (!doc.is_object()) throw DimensionError("config: top-level JSON object expected");
  for (const auto& [key, val] : doc.items()) {
    if (key == "experiment") {
      experiment = val.get<std::string>();
    } else if (key == "model") {
      const std::string m = val.get<std::string>();
      if (m == "lpp") {
        model = ModelKind::LPP;
      } else if (m == "polymer") {
        model = ModelKind::Polymer;
      } else {
        throw ParameterRangeError("config: model must be 'lpp' or 'polymer'");
      }
    } else if (key == "n") {
      n = val.get<int>();
    } else if (key == "r") {
      r = val.get<int>();
    } else if (key == "rho") {
      rho = val.get<double>();
    } else if (key == "delta0") {
      delta0 = val.get<double>();
    } else if (key == "t_grid") {
      t_grid = val.get<std::vector<double>>();
    } else if (key == "sizes") {
      sizes = val.get<std::vector<int>>();
    } else if (key == "replicas") {
      replicas = val.get<std::uint64_t>();
    } else if (key == "seed") {
      seed = val.get<std::uint64_t>();
    } else if (key == "threads") {
      threads = val.get<int>();
    } else if (key == "window_factor") {
      window_factor = val.get<double>();
    } else if (key == "epsilon") {
      epsilon = val.get<double>();
    } else if (key == "out") {
      out = val.get<std::string>();
    } else if (key == "format") {
      format = val.get<std::string>();
    } else {
      throw DimensionError("config: unknown key '" + key + "'");
    }
  }
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_replicas(std::uint64_t replicas, int threads,
                       const std::function<void(std::uint64_t)>& fn) {
  const int nthreads = resolve_threads(threads);
  if (nthreads <= 1 || replicas < 2) {
    for (std::uint64_t i = 0; i < replicas; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= replicas) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(replicas);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

using u64 = std::uint64_t;

std::string fmt_num(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

// --- deterministic lattice-addressed sampling -------------------------------

// Sites (and boundary edges) are keyed by absolute lattice coordinates, so a
// widened window re-realizes exactly the same weights at shared sites.
u64 zigzag(int x) {
  return x >= 0 ? 2ull * static_cast<u64>(x) : 2ull * static_cast<u64>(-(x + 1)) + 1ull;
}

u64 site_counter(int x, int y) { return (zigzag(y) << 32) | zigzag(x); }

Environment absolute_environment(int x_lo, int x_hi, int y_lo, int y_hi,
                                 const WeightDistribution& dist, const RngStream& stream) {
  if (x_hi < x_lo || y_hi < y_lo) throw DimensionError("absolute_environment: empty window");
  Environment env;
  env.width = x_hi - x_lo + 1;
  env.height = y_hi - y_lo + 1;
  env.dist = dist;
  env.master_seed = stream.master_seed();
  env.stream_id = stream.stream_id();
  env.origin_offset = {x_lo, y_lo};
  env.weights.resize(static_cast<std::size_t>(env.width) * env.height);
  std::size_t idx = 0;
  for (int y = y_lo; y <= y_hi; ++y) {
    for (int x = x_lo; x <= x_hi; ++x) {
      env.weights[idx++] = dist.quantile(stream.unit_at(site_counter(x, y)));
    }
  }
  return env;
}

// Boundary weight for the edge into column j, addressed by the column.
std::vector<double> boundary_row_lpp(const RngStream& stream, double rho, int j_lo, int j_hi) {
  std::vector<double> w(static_cast<std::size_t>(j_hi - j_lo + 1));
  for (int j = j_lo; j <= j_hi; ++j) {
    w[j - j_lo] = exp_quantile(stream.unit_at(zigzag(j)), rho);
  }
  return w;
}

std::vector<double> boundary_row_log_invgamma(const RngStream& stream, double rho, int j_lo,
                                              int j_hi) {
  std::vector<double> w(static_cast<std::size_t>(j_hi - j_lo + 1));
  for (int j = j_lo; j <= j_hi; ++j) {
    w[j - j_lo] = std::log(invgamma_quantile(stream.unit_at(zigzag(j)), rho));
  }
  return w;
}

// --- stationary value with window-doubling retries --------------------------

ExitRecord stationary_passage_lpp(const RngStream& base, double rho, int n,
                                  double window_factor) {
  const RngStream bstream = base.substream(0);
  const RngStream estream = base.substream(1);
  const double u = exit_e1_intersection(rho, n);
  int W = static_cast<int>(std::ceil(window_factor * std::pow(n, 2.0 / 3.0)));
  for (int attempt = 0;; ++attempt) {
    const int win_lo = static_cast<int>(std::floor(std::min(u, 0.0))) - W;
    const auto env = absolute_environment(win_lo, n, 1, n,
                                          WeightDistribution::exponential(1.0), estream);
    StationaryBoundarySpec spec;
    spec.rho = rho;
    spec.side = BoundarySide::South;
    spec.boundary_row = 0;
    spec.source_column = 0;
    spec.win_lo = win_lo;
    spec.win_hi = n;
    spec.weights_first = win_lo + 1;
    spec.boundary_weights = boundary_row_lpp(bstream, rho, win_lo + 1, n);
    try {
      return stationary_passage(env, spec, {n, n});
    } catch (const WindowTooSmallError&) {
      if (attempt >= 4) throw;
      W *= 2;
    }
  }
}

StationaryPolymerResult stationary_passage_polymer(const RngStream& base, double rho, int n,
                                                   double window_factor) {
  const RngStream bstream = base.substream(0);
  const RngStream estream = base.substream(1);
  const auto xi = characteristic_direction_polymer(rho);
  const double u = n - n * xi.first / xi.second;
  int W = static_cast<int>(std::ceil(window_factor * std::pow(n, 2.0 / 3.0)));
  for (int attempt = 0;; ++attempt) {
    const int win_lo = static_cast<int>(std::floor(std::min(u, 0.0))) - W;
    const auto env = absolute_environment(win_lo, n, 1, n,
                                          WeightDistribution::inverse_gamma(1.0), estream);
    StationaryPolymerSpec spec;
    spec.rho = rho;
    spec.side = BoundarySide::South;
    spec.boundary_row = 0;
    spec.source_column = 0;
    spec.win_lo = win_lo;
    spec.win_hi = n;
    spec.weights_first = win_lo + 1;
    spec.log_boundary_weights = boundary_row_log_invgamma(bstream, rho, win_lo + 1, n);
    try {
      return stationary_log_partition(env, spec, {n, n});
    } catch (const WindowTooSmallError&) {
      if (attempt >= 4) throw;
      W *= 2;
    }
  }
}

// --- tiny regression helper -------------------------------------------------

struct LinFit {
  double slope{0.0};
  double intercept{0.0};
  double r_squared{1.0};
};

LinFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw DimensionError("linear_fit: need two equal-length samples of size >= 2");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw NumericError("linear_fit: degenerate abscissae");
  LinFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double yhat = fit.intercept + fit.slope * xs[i];
    ss_res += (ys[i] - yhat) * (ys[i] - yhat);
    ss_tot += (ys[i] - my) * (ys[i] - my);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

void require_midpoint_range(const ExperimentConfig& cfg, const char* who) {
  const int r = cfg.resolved_r();
  if (cfg.n < 8) throw ParameterRangeError(std::string(who) + ": n must be at least 8");
  if (!(r >= 1 && 2 * r <= cfg.n)) {
    throw ParameterRangeError(std::string(who) + ": need 1 <= r <= n/2");
  }
  if (cfg.replicas < 1) throw ParameterRangeError(std::string(who) + ": need replicas >= 1");
}

// Shared tail-curve post-processing: emits rows, runs the distribution-free
// checks, and fits the cubic exponent. `statistical` gates the Monte Carlo
// assertions so tiny smoke runs stay usable.
void finish_tail_curve(StatReport& report, const std::string& exp_name,
                       const ExperimentConfig& cfg, const std::vector<double>& ts,
                       const std::vector<double>& ps, const std::vector<double>& se_halfwidth,
                       bool fractional) {
  const bool statistical = cfg.replicas >= 1000;
  std::vector<double> lo(ts.size()), hi(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (fractional) {
      lo[k] = std::max(0.0, ps[k] - se_halfwidth[k]);
      hi[k] = std::min(1.0, ps[k] + se_halfwidth[k]);
    } else {
      const auto w = wilson_interval(ps[k] * static_cast<double>(cfg.replicas),
                                     static_cast<double>(cfg.replicas));
      lo[k] = w.lo;
      hi[k] = w.hi;
    }
    const std::string stat =
        (fractional ? "Eq[t=" : "p[t=") + fmt_num(ts[k]) + "]";
    report.add(exp_name, stat, ps[k], lo[k], hi[k], cfg.replicas, cfg.seed);
  }
  if (statistical) {
    // t = 0 sits at index 0 by construction.
    if (2 * cfg.resolved_r() == cfg.n && !(ps[0] >= 0.3 && ps[0] <= 0.7)) {
      report.fail(exp_name + ": probability at t=0 outside [0.3, 0.7] (" + fmt_num(ps[0]) +
                  ")");
    }
    for (std::size_t k = 1; k < ts.size(); ++k) {
      if (ps[k] <= 0.0) {
        report.fail(exp_name + ": zero probability at t=" + fmt_num(ts[k]));
      }
      if (k >= 2 && lo[k] > hi[k - 1]) {
        report.fail(exp_name + ": monotonicity violated beyond confidence slack at t=" +
                    fmt_num(ts[k]));
      }
    }
  }
  // Fit over the configured grid only (skip the prepended t = 0 point).
  std::vector<double> ft(ts.begin() + 1, ts.end());
  std::vector<double> fp(ps.begin() + 1, ps.end());
  std::vector<double> counts(ft.size(), static_cast<double>(cfg.replicas));
  try {
    const auto fit = fit_power_law(ft, fp, counts);
    report.add(exp_name, "slope", fit.slope, fit.slope_ci_lo, fit.slope_ci_hi, cfg.replicas,
               cfg.seed);
    report.add(exp_name, "slope_r2", fit.r_squared, 0.0, 0.0, cfg.replicas, cfg.seed);
    RngStream boot_stream(cfg.seed, 0x626f6f74ull);
    const auto boot = bootstrap_power_law_slope(ft, fp, counts, 200, boot_stream);
    report.add(exp_name, "slope_bootstrap", fit.slope, boot.lo, boot.hi, cfg.replicas,
               cfg.seed);
    if (statistical && !(fit.slope >= tol::kTailSlopeLo && fit.slope <= tol::kTailSlopeHi)) {
      report.fail(exp_name + ": fitted exponent " + fmt_num(fit.slope) + " outside [" +
                  fmt_num(tol::kTailSlopeLo) + ", " + fmt_num(tol::kTailSlopeHi) + "]");
    }
  } catch (const NumericError& e) {
    if (statistical) report.fail(exp_name + ": exponent fit failed (" + e.what() + ")");
  }
}

}  // namespace

// --- tail experiments -------------------------------------------------------

StatReport run_tail_experiment_lpp(const ExperimentConfig& cfg) {
  require_midpoint_range(cfg, "tail-lpp");
  const int n = cfg.n;
  const int r = cfg.resolved_r();
  StatReport report;

  std::vector<int> entry_col(cfg.replicas);
  parallel_replicas(cfg.replicas, cfg.threads, [&](u64 rep) {
    const RngStream estream = RngStream(cfg.seed, rep).substream(0);
    const auto env = sample_environment(n + 1, n + 1, WeightDistribution::exponential(1.0),
                                        estream);
    const auto fwd = bulk_passage_row(env, {0, 0}, r - 1, n);
    const auto rev = bulk_passage_row_reverse(env, {n, n}, r, 0);
    int best_col = 0;
    double best = fwd[0] + rev[0];
    for (int j = 1; j <= n; ++j) {
      const double v = fwd[j] + rev[j];
      if (v >= best) {
        best = v;
        best_col = j;
      }
    }
    entry_col[rep] = best_col;
  });

  std::vector<double> ts{0.0};
  ts.insert(ts.end(), cfg.t_grid.begin(), cfg.t_grid.end());
  const double r23 = std::pow(r, 2.0 / 3.0);
  std::vector<double> ps(ts.size(), 0.0);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    u64 hits = 0;
    for (int c : entry_col) {
      if (static_cast<double>(c - r) >= ts[k] * r23) ++hits;
    }
    ps[k] = static_cast<double>(hits) / static_cast<double>(cfg.replicas);
  }
  finish_tail_curve(report, "tail-lpp", cfg, ts, ps, {}, false);
  return report;
}

StatReport run_tail_experiment_polymer(const ExperimentConfig& cfg) {
  require_midpoint_range(cfg, "tail-polymer");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
    throw ParameterRangeError("tail-polymer: epsilon must be in (0,1)");
  }
  const int n = cfg.n;
  const int r = cfg.resolved_r();
  StatReport report;

  std::vector<double> ts{0.0};
  ts.insert(ts.end(), cfg.t_grid.begin(), cfg.t_grid.end());
  const double r23 = std::pow(r, 2.0 / 3.0);
  const std::size_t nt = ts.size();

  std::vector<double> q_flat(cfg.replicas * nt);
  parallel_replicas(cfg.replicas, cfg.threads, [&](u64 rep) {
    const RngStream estream = RngStream(cfg.seed, rep).substream(0);
    const auto env = sample_environment(n + 1, n + 1,
                                        WeightDistribution::inverse_gamma(1.0), estream);
    const auto dist = quenched_row_entry_distribution(env, {0, 0}, {n, n}, r);
    for (std::size_t k = 0; k < nt; ++k) {
      const double thr = ts[k] * r23;
      double q = 0.0;
      for (int j = 0; j <= n; ++j) {
        if (static_cast<double>(j - r) >= thr) q += dist.mass[j];
      }
      q_flat[rep * nt + k] = std::min(q, 1.0);
    }
  });

  std::vector<double> means(nt), halfwidths(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    std::vector<double> qs(cfg.replicas);
    for (u64 rep = 0; rep < cfg.replicas; ++rep) qs[rep] = q_flat[rep * nt + k];
    const auto mv = mean_and_variance(qs);
    means[k] = mv.mean;
    halfwidths[k] = 1.959963985 * mv.std_error;
    // High-probability form: frequency of q exceeding 1 - epsilon.
    double hits = 0.0;
    for (double q : qs) {
      if (q >= 1.0 - cfg.epsilon) hits += 1.0;
    }
    const double phi = hits / static_cast<double>(cfg.replicas);
    const auto w = wilson_interval(hits, static_cast<double>(cfg.replicas));
    report.add("tail-polymer", "Phi[t=" + fmt_num(ts[k]) + "]", phi, w.lo, w.hi, cfg.replicas,
               cfg.seed);
  }
  finish_tail_curve(report, "tail-polymer", cfg, ts, means, halfwidths, true);
  return report;
}

// --- stationary validation --------------------------------------------------

StatReport run_stationary_validation(const ExperimentConfig& cfg) {
  if (cfg.replicas < 1) throw ParameterRangeError("stationary: need replicas >= 1");
  StatReport report;
  const bool statistical = cfg.replicas >= 1000;

  // Expectations at rho = 1/2 against the closed forms.
  {
    const int n_lpp = 64;
    std::vector<double> vals(cfg.replicas);
    parallel_replicas(cfg.replicas, cfg.threads, [&](u64 rep) {
      const RngStream base = RngStream(cfg.seed, rep).substream(1);
      vals[rep] = stationary_passage_lpp(base, 0.5, n_lpp, cfg.window_factor).value;
    });
    const auto mv = mean_and_variance(vals);
    const double expected = expected_stationary_G(0.5, n_lpp, n_lpp);
    report.add("stationary-lpp", "mean_G[n=" + std::to_string(n_lpp) + "]", mv.mean,
               mv.mean - 1.959963985 * mv.std_error, mv.mean + 1.959963985 * mv.std_error,
               cfg.replicas, cfg.seed);
    report.add("stationary-lpp", "expected_G[n=" + std::to_string(n_lpp) + "]", expected, 0.0,
               0.0, cfg.replicas, cfg.seed);
    if (statistical && std::fabs(mv.mean - expected) > tol::kMeanSigmas * mv.std_error) {
      report.fail("stationary-lpp: mean " + fmt_num(mv.mean) + " deviates from " +
                  fmt_num(expected) + " by more than " + fmt_num(tol::kMeanSigmas) + " SE");
    }
  }
  {
    const int n_pol = 32;
    std::vector<double> vals(cfg.replicas);
    parallel_replicas(cfg.replicas, cfg.threads, [&](u64 rep) {
      const RngStream base = RngStream(cfg.seed, rep).substream(2);
      vals[rep] = stationary_passage_polymer(base, 0.5, n_pol, cfg.window_factor).log_value;
    });
    const auto mv = mean_and_variance(vals);
    const double expected = expected_stationary_logZ(0.5, n_pol, n_pol);
    report.add("stationary-polymer", "mean_logZ[n=" + std::to_string(n_pol) + "]", mv.mean,
               mv.mean - 1.959963985 * mv.std_error, mv.mean + 1.959963985 * mv.std_error,
               cfg.replicas, cfg.seed);
    report.add("stationary-polymer", "expected_logZ[n=" + std::to_string(n_pol) + "]", expected,
               0.0, 0.0, cfg.replicas, cfg.seed);
    if (statistical && std::fabs(mv.mean - expected) > tol::kMeanSigmas * mv.std_error) {
      report.fail("stationary-polymer: mean " + fmt_num(mv.mean) + " deviates from " +
                  fmt_num(expected) + " by more than " + fmt_num(tol::kMeanSigmas) + " SE");
    }
  }

  // Increment stationarity at level h = 16, pooled over replicas.
  {
    const int h = 16;
    const int x_hi = 40;
    const int win_lo = -120;
    const u64 burke_reps = 200;
    const int per_rep = x_hi;  // increments into columns 1..x_hi
    const std::array<double, 3> rhos{0.4, 0.5, 0.6};
    for (std::size_t ri = 0; ri < rhos.size(); ++ri) {
      const double rho = rhos[ri];
      for (int model = 0; model < 2; ++model) {
        const bool polymer = model == 1;
        std::vector<double> samples(burke_reps * per_rep);
        parallel_replicas(burke_reps, cfg.threads, [&](u64 rep) {
          const RngStream base = RngStream(cfg.seed, rep).substream(10 + 2 * ri + model);
          const RngStream bstream = base.substream(0);
          const RngStream estream = base.substream(1);
          if (!polymer) {
            const auto env = absolute_environment(
                win_lo, x_hi, 1, h, WeightDistribution::exponential(1.0), estream);
            StationaryBoundarySpec spec;
            spec.rho = rho;
            spec.side = BoundarySide::South;
            spec.boundary_row = 0;
            spec.source_column = 0;
            spec.win_lo = win_lo;
            spec.win_hi = x_hi;
            spec.weights_first = win_lo + 1;
            spec.boundary_weights = boundary_row_lpp(bstream, rho, win_lo + 1, x_hi);
            const auto field = stationary_field(env, spec, h);
            for (int i = 1; i <= x_hi; ++i) {
              samples[rep * per_rep + (i - 1)] = field.at({i, h}) - field.at({i - 1, h});
            }
          } else {
            const auto env = absolute_environment(
                win_lo, x_hi, 1, h, WeightDistribution::inverse_gamma(1.0), estream);
            StationaryPolymerSpec spec;
            spec.rho = rho;
            spec.side = BoundarySide::South;
            spec.boundary_row = 0;
            spec.source_column = 0;
            spec.win_lo = win_lo;
            spec.win_hi = x_hi;
            spec.weights_first = win_lo + 1;
            spec.log_boundary_weights =
                boundary_row_log_invgamma(bstream, rho, win_lo + 1, x_hi);
            const auto field = stationary_log_field(env, spec, h);
            for (int i = 1; i <= x_hi; ++i) {
              samples[rep * per_rep + (i - 1)] =
                  std::exp(field.at({i, h}) - field.at({i - 1, h}));
            }
          }
        });
        const auto ks = polymer
                            ? ks_test(samples, [rho](double x) { return invgamma_cdf(x, rho); })
                            : ks_test(samples, [rho](double x) { return exp_cdf(x, rho); });
        const std::string exp_name = polymer ? "stationary-polymer" : "stationary-lpp";
        report.add(exp_name, "burke_ks_p[rho=" + fmt_num(rho) + "]", ks.p_value, 0.0, 0.0,
                   burke_reps, cfg.seed);
        if (ks.p_value <= tol::kKsPValue) {
          report.fail(exp_name + ": increment KS p = " + fmt_num(ks.p_value) +
                      " at rho = " + fmt_num(rho));
        }
      }
    }
  }

  // Variance scaling across sizes.
  {
    const u64 vreps = std::max<u64>(cfg.replicas, 5000);
    for (int model = 0; model < 2; ++model) {
      const bool polymer = model == 1;
      const std::string exp_name = polymer ? "stationary-polymer" : "stationary-lpp";
      std::vector<double> log_n, log_var, ratios;
      for (std::size_t si = 0; si < cfg.sizes.size(); ++si) {
        const int n = cfg.sizes[si];
        std::vector<double> vals(vreps);
        parallel_replicas(vreps, cfg.threads, [&](u64 rep) {
          const RngStream base = RngStream(cfg.seed, rep).substream(20 + 2 * si + model);
          vals[rep] = polymer
                          ? stationary_passage_polymer(base, 0.5, n, cfg.window_factor).log_value
                          : stationary_passage_lpp(base, 0.5, n, cfg.window_factor).value;
        });
        const auto mv = mean_and_variance(vals);
        const double ratio = mv.variance / std::pow(n, 2.0 / 3.0);
        report.add(exp_name, "var_ratio[n=" + std::to_string(n) + "]", ratio, 0.0, 0.0, vreps,
                   cfg.seed);
        log_n.push_back(std::log(static_cast<double>(n)));
        log_var.push_back(std::log(mv.variance));
        ratios.push_back(ratio);
      }
      if (ratios.size() >= 2) {
        const double band =
            *std::max_element(ratios.begin(), ratios.end()) /
            *std::min_element(ratios.begin(), ratios.end());
        const auto fit = linear_fit(log_n, log_var);
        report.add(exp_name, "var_band_ratio", band, 0.0, 0.0, vreps, cfg.seed);
        report.add(exp_name, "var_slope", fit.slope, 0.0, 0.0, vreps, cfg.seed);
        if (band > tol::kVarianceBand) {
          report.fail(exp_name + ": Var/n^{2/3} band ratio " + fmt_num(band) + " exceeds " +
                      fmt_num(tol::kVarianceBand));
        }
        if (!(fit.slope >= tol::kVarSlopeLo && fit.slope <= tol::kVarSlopeHi)) {
          report.fail(exp_name + ": variance log-log slope " + fmt_num(fit.slope) +
                      " outside [" + fmt_num(tol::kVarSlopeLo) + ", " +
                      fmt_num(tol::kVarSlopeHi) + "]");
        }
      }
    }
  }
  return report;
}

// --- exit concentration -----------------------------------------------------

StatReport run_exit_concentration(const ExperimentConfig& cfg) {
  if (cfg.n < 8) throw ParameterRangeError("exit: n must be at least 8");
  if (cfg.replicas < 1) throw ParameterRangeError("exit: need replicas >= 1");
  StatReport report;
  const int n = cfg.n;
  const double n23 = std::pow(n, 2.0 / 3.0);
  const bool statistical = cfg.replicas >= 1000;
  const std::array<double, 3> t_levels{1.0, 2.0, 3.0};

  // LPP: empirical exit-index tails and median centering.
  const std::array<double, 3> rhos{0.4, 0.5, 0.6};
  std::array<double, 3> main_tail{0.0, 0.0, 0.0};
  for (std::size_t ri = 0; ri < rhos.size(); ++ri) {
    const double rho = rhos[ri];
    const double u = exit_e1_intersection(rho, n);
    std::vector<double> exits(cfg.replicas);
    parallel_replicas(cfg.replicas, cfg.threads, [&](u64 rep) {
      const RngStream base = RngStream(cfg.seed, rep).substream(40 + ri);
      exits[rep] =
          static_cast<double>(stationary_passage_lpp(base, rho, n, cfg.window_factor).exit_index);
    });
    std::vector<double> sorted = exits;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double median_offset = std::fabs(median - u) / n23;
    report.add("exit-lpp", "median_offset[rho=" + fmt_num(rho) + "]", median_offset, 0.0, 0.0,
               cfg.replicas, cfg.seed);
    if (statistical && median_offset > 1.0) {
      report.fail("exit-lpp: median exit at rho = " + fmt_num(rho) + " sits " +
                  fmt_num(median_offset) + " n^{2/3} away from the characteristic point");
    }
    if (rho == cfg.rho) {
      for (std::size_t k = 0; k < t_levels.size(); ++k) {
        u64 hits = 0;
        for (double e : exits) {
          if (std::fabs(e - u) > t_levels[k] * n23) ++hits;
        }
        const double p = static_cast<double>(hits) / static_cast<double>(cfg.replicas);
        const auto w = wilson_interval(static_cast<double>(hits),
                                       static_cast<double>(cfg.replicas));
        main_tail[k] = p;
        report.add("exit-lpp", "tail[t=" + fmt_num(t_levels[k]) + "]", p, w.lo, w.hi,
                   cfg.replicas, cfg.seed);
      }
    }
  }
  if (statistical) {
    if (!(main_tail[2] < tol::kExitTailAt3)) {
      report.fail("exit-lpp: P(|exit - u| > 3 n^{2/3}) = " + fmt_num(main_tail[2]) +
                  " not below " + fmt_num(tol::kExitTailAt3));
    }
    if (!(main_tail[0] >= main_tail[1] && main_tail[1] >= main_tail[2])) {
      report.fail("exit-lpp: tail not monotone over t = 1, 2, 3");
    }
  }

  // Polymer: mean quenched mass outside the characteristic window (reported,
  // not asserted; the exit object is a distribution rather than an index).
  {
    const u64 preps = std::min<u64>(cfg.replicas, 2000);
    const auto xi = characteristic_direction_polymer(cfg.rho);
    const double u = n - n * xi.first / xi.second;
    std::vector<std::array<double, 3>> outside(preps);
    parallel_replicas(preps, cfg.threads, [&](u64 rep) {
      const RngStream base = RngStream(cfg.seed, rep).substream(50);
      const auto res = stationary_passage_polymer(base, cfg.rho, n, cfg.window_factor);
      for (std::size_t k = 0; k < t_levels.size(); ++k) {
        double mass = 0.0;
        for (std::size_t j = 0; j < res.exit_mass.size(); ++j) {
          const double col = static_cast<double>(res.first_column + static_cast<int>(j));
          if (std::fabs(col - u) > t_levels[k] * n23) mass += res.exit_mass[j];
        }
        outside[rep][k] = mass;
      }
    });
    for (std::size_t k = 0; k < t_levels.size(); ++k) {
      std::vector<double> xs(preps);
      for (u64 rep = 0; rep < preps; ++rep) xs[rep] = outside[rep][k];
      const auto mv = mean_and_variance(xs);
      report.add("exit-polymer", "mass_out[t=" + fmt_num(t_levels[k]) + "]", mv.mean,
                 std::max(0.0, mv.mean - 1.959963985 * mv.std_error),
                 std::min(1.0, mv.mean + 1.959963985 * mv.std_error), preps, cfg.seed);
    }
  }
  return report;
}

// --- duality suite ----------------------------------------------------------

namespace {

constexpr int kDualColLo = -110;
constexpr int kDualColHi = 220;
constexpr int kDualRowsBelow = 215;
constexpr int kDualRowsAbove = 110;
constexpr int kMarginalSites = 40;
constexpr int kMarginalColLo = -60;  // increment samples over columns -60..-21

struct DualityRep {
  std::array<double, kMarginalSites> i_above;
  std::array<double, kMarginalSites> j_above;
  std::array<double, kMarginalSites> dual_row0;
  std::array<double, kMarginalSites> i_below;
  bool equivalent{true};
  bool disjoint{true};
  double recovery_err{0.0};
};

DualityRep duality_replica(ModelKind model, double rho, u64 seed, u64 rep) {
  const RngStream rep_stream = RngStream(seed, rep).substream(model == ModelKind::LPP ? 60 : 61);
  CoupledPairSpec spec;
  spec.model = model;
  spec.rho = rho;
  spec.col_lo = kDualColLo;
  spec.col_hi = kDualColHi;
  spec.boundary_row = 0;
  spec.rows_below = kDualRowsBelow;
  spec.rows_above = kDualRowsAbove;
  const auto pair = exact_coupled_pair(spec, rep_stream);
  const auto& f = pair.field;
  const bool polymer = model == ModelKind::Polymer;

  DualityRep out;
  for (int k = 0; k < kMarginalSites; ++k) {
    const int i = kMarginalColLo + k;
    const double ia = f.I_incr({i, 1});
    const double ib = f.I_incr({i, -1});
    const double d0 = dual_weight(model, f.I_incr({i, 0}), f.J_incr({i, 0}));
    const double ja = f.J_incr({-40, 1 + k});
    out.i_above[k] = polymer ? std::exp(ia) : ia;
    out.i_below[k] = polymer ? std::exp(ib) : ib;
    out.j_above[k] = polymer ? std::exp(ja) : ja;
    out.dual_row0[k] = d0;
  }

  // Weight-recovery identities: the minimum (softmin) of the incoming
  // increments above the row reproduces the dual environment, and of the
  // outgoing increments below the row the primal environment. Errors are
  // relative: inverse-gamma weights are heavy-tailed, so the log-scale
  // rounding of the potential scales with the weight itself.
  const auto rel_err = [](double got, double want) {
    return std::fabs(got - want) / std::max(1.0, std::fabs(want));
  };
  for (int k = 0; k < 20; ++k) {
    const Point za{-20 + k, 3};
    const double wa = dual_weight(model, f.I_incr(za), f.J_incr(za));
    out.recovery_err = std::max(out.recovery_err, rel_err(wa, pair.dual_env.at(za)));
    const Point zb{-20 + k, -3};
    const double o1 = f.phi_at(zb + kE1) - f.phi_at(zb);
    const double o2 = f.phi_at(zb + kE2) - f.phi_at(zb);
    const double wb = dual_weight(model, o1, o2);
    out.recovery_err = std::max(out.recovery_err, rel_err(wb, pair.primal_env.at(zb)));
  }

  if (!polymer) {
    // Forward increment-driven path from below the row versus the
    // north-boundary stationary geodesic entering the same row.
    const Point x0{0, -40};
    LatticePath walk;
    Point z = x0;
    walk.vertices.push_back(z);
    bool covered = true;
    while (z.y < 0) {
      if (!f.contains(z + kE1) || !f.contains(z + kE2)) {
        covered = false;
        break;
      }
      z = f.phi_at(z + kE1) <= f.phi_at(z + kE2) ? z + kE1 : z + kE2;
      walk.vertices.push_back(z);
    }
    if (!covered) {
      out.equivalent = false;
    } else {
      const auto fwd = bulk_passage_row(pair.primal_env, x0, -1, kDualColHi);
      int best_i = 0;
      double best = fwd[0] - f.phi_at({0, 0});
      for (int i = 1; i <= kDualColHi; ++i) {
        const double v = fwd[i] - f.phi_at({i, 0});
        if (v >= best) {
          best = v;
          best_i = i;
        }
      }
      const auto bulk = bulk_passage_field(pair.primal_env, x0);
      auto geo = geodesic_backtrack(bulk, pair.primal_env, {best_i, -1});
      geo.vertices.push_back({best_i, 0});
      out.equivalent = walk.vertices == geo.vertices;
    }
    const auto primal = forward_path_from_busemann(f, {0, -100}, 200);
    const auto dual = southwest_path_from_busemann(f, {100, 0}, 200);
    out.disjoint = check_primal_dual_disjoint(primal, dual).disjoint;
  } else {
    // Fixed-length sampled prefixes: a 200-step cap keeps both walks inside
    // the coverage window for every realization (a fixed target row does
    // not, since transversal excursions are superdiffusive).
    //
    // Disjointness needs the two walks to share randomness: one uniform per
    // unit square, addressed by its lower-left corner. The forward walk at
    // that corner and the southwest walk at the opposite corner use the same
    // uniform with the same orientation, so both crossing configurations of
    // a square would need U < p and U >= p at once (the kernels agree:
    // pi^fwd_z(e1) = pi^sw_{z+e1+e2}(-e1) since both reduce to the same
    // ratio of e^{-phi} values at z+e1, z+e2).
    const RngStream us = rep_stream.substream(5);
    const auto square_u = [&us](Point corner) {
      return us.unit_at(site_counter(corner.x, corner.y));
    };
    SemiInfinitePathPrefix primal;
    primal.start = {0, -100};
    primal.direction = PathDirection::NorthEast;
    Point zp = primal.start;
    primal.path.vertices.push_back(zp);
    for (int k = 0; k < 200; ++k) {
      const double p_e1 =
          1.0 / (1.0 + std::exp(f.phi_at(zp + kE1) - f.phi_at(zp + kE2)));
      zp = square_u(zp) < p_e1 ? zp + kE1 : zp + kE2;
      primal.path.vertices.push_back(zp);
    }
    SemiInfinitePathPrefix dual;
    dual.start = {100, 0};
    dual.direction = PathDirection::SouthWest;
    Point zd = dual.start;
    dual.path.vertices.push_back(zd);
    for (int k = 0; k < 200; ++k) {
      const double p_me1 =
          1.0 / (1.0 + std::exp(f.phi_at(zd - kE2) - f.phi_at(zd - kE1)));
      zd = square_u(zd - kE1 - kE2) < p_me1 ? zd - kE1 : zd - kE2;
      dual.path.vertices.push_back(zd);
    }
    out.disjoint = check_primal_dual_disjoint(primal, dual).disjoint;
  }
  return out;
}

// Exhaustive comparison of the forward transition chain against the quenched
// measure on a small coupled pair: total variation over all paths from x0 to
// the boundary row.
struct ChainCheck {
  double tv{0.0};
  double mass_defect{0.0};
};

ChainCheck polymer_chain_check(double rho, u64 seed, u64 rep) {
  CoupledPairSpec spec;
  spec.model = ModelKind::Polymer;
  spec.rho = rho;
  spec.col_lo = -4;
  spec.col_hi = 18;
  spec.boundary_row = 0;
  spec.rows_below = 5;
  spec.rows_above = 1;
  const RngStream rep_stream = RngStream(seed, rep).substream(62);
  const auto pair = exact_coupled_pair(spec, rep_stream);
  const auto& f = pair.field;
  const Point x0{0, -4};

  double tv = 0.0;
  double chain_total = 0.0;
  // Depth-first over all up-right paths from x0 until the boundary row.
  struct Frame {
    Point z;
    double log_chain;
    double log_weights;
  };
  std::vector<Frame> stack;
  stack.push_back({x0, 0.0, std::log(pair.primal_env.at(x0))});
  while (!stack.empty()) {
    const Frame fr = stack.back();
    stack.pop_back();
    if (fr.z.y == 0) {
      const double log_qn = fr.log_weights - f.phi_at(fr.z) + f.phi_at(x0);
      const double chain_p = std::exp(fr.log_chain);
      tv += std::fabs(chain_p - std::exp(log_qn));
      chain_total += chain_p;
      continue;
    }
    if (fr.z.x == spec.col_hi) {
      const Point nz = fr.z + kE2;
      const double w = nz.y == 0 ? 0.0 : std::log(pair.primal_env.at(nz));
      stack.push_back({nz, fr.log_chain, fr.log_weights + w});
      continue;
    }
    const double log_I = f.phi_at(fr.z + kE1) - f.phi_at(fr.z);
    const double log_J = f.phi_at(fr.z + kE2) - f.phi_at(fr.z);
    const auto [p_e1, p_e2] = polymer_forward_kernel(log_I, log_J);
    const Point z1 = fr.z + kE1;
    const Point z2 = fr.z + kE2;
    stack.push_back({z1, fr.log_chain + std::log(p_e1),
                     fr.log_weights + (z1.y == 0 ? 0.0 : std::log(pair.primal_env.at(z1)))});
    stack.push_back({z2, fr.log_chain + std::log(p_e2),
                     fr.log_weights + (z2.y == 0 ? 0.0 : std::log(pair.primal_env.at(z2)))});
  }
  return {0.5 * tv, std::fabs(chain_total - 1.0)};
}

}  // namespace

StatReport run_duality_suite(const ExperimentConfig& cfg) {
  if (!(cfg.rho > 0.0 && cfg.rho < 1.0)) {
    throw ParameterRangeError("duality: rho must be in (0,1)");
  }
  StatReport report;
  const u64 dreps = std::min<u64>(std::max<u64>(cfg.replicas, 1), 1000);

  for (int model = 0; model < 2; ++model) {
    const bool polymer = model == 1;
    const ModelKind kind = polymer ? ModelKind::Polymer : ModelKind::LPP;
    const std::string exp_name = polymer ? "duality-polymer" : "duality-lpp";
    std::vector<DualityRep> reps(dreps);
    parallel_replicas(dreps, cfg.threads, [&](u64 rep) {
      reps[rep] = duality_replica(kind, cfg.rho, cfg.seed, rep);
    });

    std::vector<double> i_above, j_above, dual_row0, i_below;
    u64 equivalent = 0, crossings = 0;
    double recovery = 0.0;
    for (const auto& r : reps) {
      i_above.insert(i_above.end(), r.i_above.begin(), r.i_above.end());
      j_above.insert(j_above.end(), r.j_above.begin(), r.j_above.end());
      dual_row0.insert(dual_row0.end(), r.dual_row0.begin(), r.dual_row0.end());
      i_below.insert(i_below.end(), r.i_below.begin(), r.i_below.end());
      if (r.equivalent) ++equivalent;
      if (!r.disjoint) ++crossings;
      recovery = std::max(recovery, r.recovery_err);
    }

    const double rho = cfg.rho;
    const auto cdf_rho = [polymer, rho](double x) {
      return polymer ? invgamma_cdf(x, rho) : exp_cdf(x, rho);
    };
    const auto cdf_1mrho = [polymer, rho](double x) {
      return polymer ? invgamma_cdf(x, 1.0 - rho) : exp_cdf(x, 1.0 - rho);
    };
    const auto cdf_one = [polymer](double x) {
      return polymer ? invgamma_cdf(x, 1.0) : exp_cdf(x, 1.0);
    };
    const struct {
      const char* name;
      std::vector<double>* samples;
      const std::function<double(double)> cdf;
    } tests[] = {
        {"ks_I_above_p", &i_above, cdf_rho},
        {"ks_J_above_p", &j_above, cdf_1mrho},
        {"ks_dual_row0_p", &dual_row0, cdf_one},
        {"ks_I_below_p", &i_below, cdf_rho},
    };
    for (const auto& t : tests) {
      const auto ks = ks_test(*t.samples, t.cdf);
      report.add(exp_name, t.name, ks.p_value, 0.0, 0.0, dreps, cfg.seed);
      if (ks.p_value <= tol::kKsPValue) {
        report.fail(exp_name + std::string(": ") + t.name + " = " + fmt_num(ks.p_value));
      }
    }

    if (!polymer) {
      const double eq_rate = static_cast<double>(equivalent) / static_cast<double>(dreps);
      report.add(exp_name, "edge_equivalence_rate", eq_rate, 0.0, 0.0, dreps, cfg.seed);
      if (eq_rate < 1.0) {
        report.fail(exp_name + ": stationary-geodesic equivalence failed in " +
                    std::to_string(dreps - equivalent) + " replicas");
      }
    }
    report.add(exp_name, "crossing_count", static_cast<double>(crossings), 0.0, 0.0, dreps,
               cfg.seed);
    if (crossings > 0) {
      report.fail(exp_name + ": " + std::to_string(crossings) + " primal-dual crossings");
    }
    report.add(exp_name, "recovery_max_err", recovery, 0.0, 0.0, dreps, cfg.seed);
    if (recovery > tol::kMassTol) {
      report.fail(exp_name + ": weight recovery error " + fmt_num(recovery));
    }
  }

  // Transition-chain law versus the quenched measure by full enumeration.
  {
    const u64 creps = std::min<u64>(dreps, 30);
    std::vector<ChainCheck> checks(creps);
    parallel_replicas(creps, cfg.threads, [&](u64 rep) {
      checks[rep] = polymer_chain_check(cfg.rho, cfg.seed, rep);
    });
    double tv = 0.0, defect = 0.0;
    for (const auto& c : checks) {
      tv = std::max(tv, c.tv);
      defect = std::max(defect, c.mass_defect);
    }
    report.add("duality-polymer", "chain_tv_max", tv, 0.0, 0.0, creps, cfg.seed);
    report.add("duality-polymer", "chain_mass_defect_max", defect, 0.0, 0.0, creps, cfg.seed);
    if (tv > tol::kMassTol) {
      report.fail("duality-polymer: chain-law total variation " + fmt_num(tv));
    }
    if (defect > tol::kMassTol) {
      report.fail("duality-polymer: chain mass defect " + fmt_num(defect));
    }
  }
  return report;
}

// --- tilt suite -------------------------------------------------------------

namespace {

struct EventDRep {
  bool d1{false}, d2{false};
  bool td1{false}, td2{false};
  double log_f{0.0};
};

EventDRep event_d_replica(const TiltSpec& spec, u64 seed, u64 rep, u64 tag) {
  const int n = spec.n;
  const int r = spec.r;
  const double r23 = std::pow(r, 2.0 / 3.0);
  const double m23 = std::pow(n - r, 2.0 / 3.0);
  const int north_x_hi = r + static_cast<int>(std::ceil(8.0 * r23));
  const int south_lo = std::max(-(r - 1), r - static_cast<int>(std::ceil(8.0 * m23)));
  const int j_lo = std::min(south_lo, 0) + 1;
  const int j_hi = std::max({north_x_hi, spec.b_hi, n}) + 1;

  const RngStream base = RngStream(seed, rep).substream(tag);
  const RngStream bstream = base.substream(0);
  const RngStream below_stream = base.substream(1);
  const RngStream above_stream = base.substream(2);

  std::vector<double> I_row(static_cast<std::size_t>(j_hi - j_lo + 1));
  for (int j = j_lo; j <= j_hi; ++j) {
    I_row[j - j_lo] = exp_quantile(bstream.unit_at(zigzag(j)), 0.5);
  }
  const auto tb = tilt_boundary_lpp(I_row, j_lo, spec);

  const auto env_below = absolute_environment(0, north_x_hi, 0, r - 1,
                                              WeightDistribution::exponential(1.0),
                                              below_stream);
  const auto env_above = absolute_environment(south_lo, n, r + 1, n + 1,
                                              WeightDistribution::exponential(1.0),
                                              above_stream);
  const auto fwd = bulk_passage_row(env_below, {0, 0}, r - 1, north_x_hi);
  const auto rev = bulk_passage_row_reverse(env_above, {n, n + 1}, r + 1, south_lo);

  // Exit of the north model from (0,0) into the boundary row: argmax of
  // F(i) - H(i) with H the cumulative boundary sum.
  const auto north_exit = [&](const std::vector<double>& row) {
    double H = 0.0;
    for (int j = j_lo; j <= 0; ++j) H += row[j - j_lo];
    int best_i = 0;
    double best = fwd[0] - H;
    for (int i = 1; i <= north_x_hi; ++i) {
      H += row[i - j_lo];
      const double v = fwd[i] - H;
      if (v >= best) {
        best = v;
        best_i = i;
      }
    }
    return best_i;
  };
  // Exit of the south model toward (n, n+1): argmax of h(i) + B(i), h the
  // signed cumulative boundary sum anchored at the window's left end.
  const auto south_exit = [&](const std::vector<double>& row) {
    double h = 0.0;
    int best_i = south_lo;
    double best = rev[0];
    for (int i = south_lo + 1; i <= n; ++i) {
      h += row[i - j_lo];
      const double v = h + rev[i - south_lo];
      if (v >= best) {
        best = v;
        best_i = i;
      }
    }
    return best_i;
  };

  EventDRep out;
  const int tau_n = north_exit(tb.original);
  const int tau_s = south_exit(tb.original);
  const int ttau_n = north_exit(tb.tilted);
  const int ttau_s = south_exit(tb.tilted);
  out.d1 = tau_n - r >= spec.d1_lo && tau_n - r <= spec.d1_hi;
  out.d2 = tau_s - r >= spec.d2_lo;
  out.td1 = ttau_n - r >= spec.d1_lo && ttau_n - r <= spec.d1_hi;
  out.td2 = ttau_s - r >= spec.d2_lo;
  out.log_f = rn_log_derivative_exp(tb.original, j_lo, spec);
  return out;
}

}  // namespace

StatReport run_tilt_suite(const ExperimentConfig& cfg) {
  require_midpoint_range(cfg, "tilt");
  StatReport report;
  const int n = cfg.n;
  const int r = cfg.resolved_r();
  const bool statistical = cfg.replicas >= 1000;
  const TiltSpec spec1 = tilt_parameters(cfg.delta0, 1.0, r, n);
  const int row_lo = spec1.a_lo;
  const int row_hi = std::max(spec1.b_hi, spec1.a_hi);
  const int row_len = row_hi - row_lo + 1;

  // Radon-Nikodym normalization and second moment, exponential boundary.
  {
    std::vector<double> log_f(cfg.replicas);
    const u64 ks_reps = std::min<u64>(cfg.replicas, 200);
    std::vector<double> tilted_a(ks_reps * spec1.size_A());
    const int b_sample = std::min(spec1.size_B(), 100);
    std::vector<double> tilted_b(ks_reps * b_sample);
    parallel_replicas(cfg.replicas, cfg.threads, [&](u64 rep) {
      const RngStream bstream = RngStream(cfg.seed, rep).substream(70);
      std::vector<double> row(row_len);
      for (int j = row_lo; j <= row_hi; ++j) {
        row[j - row_lo] = exp_quantile(bstream.unit_at(zigzag(j)), 0.5);
      }
      log_f[rep] = rn_log_derivative_exp(row, row_lo, spec1);
      if (rep < ks_reps) {
        const auto tb = tilt_boundary_lpp(row, row_lo, spec1);
        for (int k = 0; k < spec1.size_A(); ++k) {
          tilted_a[rep * spec1.size_A() + k] = tb.tilted[spec1.a_lo + k - row_lo];
        }
        for (int k = 0; k < b_sample; ++k) {
          tilted_b[rep * b_sample + k] = tb.tilted[spec1.b_lo + k - row_lo];
        }
      }
    });
    std::vector<double> f(cfg.replicas), f2(cfg.replicas);
    for (u64 rep = 0; rep < cfg.replicas; ++rep) {
      f[rep] = std::exp(log_f[rep]);
      f2[rep] = std::exp(2.0 * log_f[rep]);
    }
    const auto mf = mean_and_variance(f);
    const auto mf2 = mean_and_variance(f2);
    const double closed = rn_second_moment_closed_form(spec1);
    report.add("tilt-lpp-rn", "Ef", mf.mean, mf.mean - 1.959963985 * mf.std_error,
               mf.mean + 1.959963985 * mf.std_error, cfg.replicas, cfg.seed);
    report.add("tilt-lpp-rn", "Ef2_mc", mf2.mean, mf2.mean - 1.959963985 * mf2.std_error,
               mf2.mean + 1.959963985 * mf2.std_error, cfg.replicas, cfg.seed);
    report.add("tilt-lpp-rn", "Ef2_closed", closed, 0.0, 0.0, cfg.replicas, cfg.seed);
    const double rel = std::fabs(mf2.mean - closed) / closed;
    report.add("tilt-lpp-rn", "Ef2_rel_err", rel, 0.0, 0.0, cfg.replicas, cfg.seed);
    if (statistical && std::fabs(mf.mean - 1.0) > tol::kMeanSigmas * mf.std_error) {
      report.fail("tilt-lpp-rn: E[f] = " + fmt_num(mf.mean) + " deviates from 1 beyond " +
                  fmt_num(tol::kMeanSigmas) + " SE");
    }
    if (statistical && rel > tol::kSecondMomentRel &&
        std::fabs(mf2.mean - closed) > tol::kMeanSigmas * mf2.std_error) {
      report.fail("tilt-lpp-rn: E[f^2] relative error " + fmt_num(rel) + " exceeds " +
                  fmt_num(tol::kSecondMomentRel));
    }
    const double lam = spec1.lambda, eta = spec1.eta;
    const auto ks_a = ks_test(tilted_a, [lam](double x) { return exp_cdf(x, lam); });
    const auto ks_b = ks_test(tilted_b, [eta](double x) { return exp_cdf(x, eta); });
    report.add("tilt-lpp-rn", "ks_tilted_A_p", ks_a.p_value, 0.0, 0.0, ks_reps, cfg.seed);
    report.add("tilt-lpp-rn", "ks_tilted_B_p", ks_b.p_value, 0.0, 0.0, ks_reps, cfg.seed);
    if (ks_a.p_value <= tol::kKsPValue) {
      report.fail("tilt-lpp-rn: tilted interval A KS p = " + fmt_num(ks_a.p_value));
    }
    if (ks_b.p_value <= tol::kKsPValue) {
      report.fail("tilt-lpp-rn: tilted interval B KS p = " + fmt_num(ks_b.p_value));
    }
  }

  // Radon-Nikodym for the inverse-gamma boundary, plus the shared-uniform
  // ordering and the additive growth of log E[f^2] in the interval length.
  {
    const u64 preps = std::min<u64>(cfg.replicas, 200000);
    std::vector<double> log_f(preps);
    std::atomic<u64> ordering_violations{0};
    const u64 order_reps = std::min<u64>(preps, 200);
    parallel_replicas(preps, cfg.threads, [&](u64 rep) {
      const RngStream bstream = RngStream(cfg.seed, rep).substream(71);
      std::vector<double> uniforms(row_len), row(row_len);
      for (int j = row_lo; j <= row_hi; ++j) {
        uniforms[j - row_lo] = bstream.unit_at(zigzag(j));
        row[j - row_lo] = invgamma_quantile(uniforms[j - row_lo], 0.5);
      }
      log_f[rep] = rn_log_derivative_invgamma(row, row_lo, spec1);
      if (rep < order_reps) {
        const auto tb = tilt_boundary_invgamma(uniforms, row_lo, spec1);
        u64 bad = 0;
        for (int j = spec1.a_lo; j <= spec1.a_hi; ++j) {
          if (tb.tilted[j - row_lo] > tb.original[j - row_lo]) ++bad;
        }
        for (int j = spec1.b_lo; j <= spec1.b_hi; ++j) {
          if (tb.tilted[j - row_lo] < tb.original[j - row_lo]) ++bad;
        }
        if (bad > 0) ordering_violations.fetch_add(bad);
      }
    });
    std::vector<double> f(preps), f2(preps);
    for (u64 rep = 0; rep < preps; ++rep) {
      f[rep] = std::exp(log_f[rep]);
      f2[rep] = std::exp(2.0 * log_f[rep]);
    }
    const auto mf = mean_and_variance(f);
    const auto mf2 = mean_and_variance(f2);
    double oracle = 1.0;
    for (int k = 0; k < spec1.size_A(); ++k) {
      oracle *= rn_invgamma_site_second_moment(spec1.lambda);
    }
    for (int k = 0; k < spec1.size_B(); ++k) {
      oracle *= rn_invgamma_site_second_moment(spec1.eta);
    }
    report.add("tilt-polymer-rn", "Ef", mf.mean, mf.mean - 1.959963985 * mf.std_error,
               mf.mean + 1.959963985 * mf.std_error, preps, cfg.seed);
    report.add("tilt-polymer-rn", "Ef2_mc", mf2.mean,
               mf2.mean - 1.959963985 * mf2.std_error, mf2.mean + 1.959963985 * mf2.std_error,
               preps, cfg.seed);
    report.add("tilt-polymer-rn", "Ef2_oracle", oracle, 0.0, 0.0, preps, cfg.seed);
    report.add("tilt-polymer-rn", "ordering_violations",
               static_cast<double>(ordering_violations.load()), 0.0, 0.0, order_reps, cfg.seed);
    if (statistical && std::fabs(mf.mean - 1.0) > tol::kMeanSigmas * mf.std_error) {
      report.fail("tilt-polymer-rn: E[f] = " + fmt_num(mf.mean) + " deviates from 1 beyond " +
                  fmt_num(tol::kMeanSigmas) + " SE");
    }
    if (statistical && std::fabs(mf2.mean - oracle) >
                           std::max(tol::kMeanSigmas * mf2.std_error,
                                    tol::kSecondMomentRel * oracle)) {
      report.fail("tilt-polymer-rn: E[f^2] = " + fmt_num(mf2.mean) +
                  " inconsistent with the per-site product " + fmt_num(oracle));
    }
    if (ordering_violations.load() > 0) {
      report.fail("tilt-polymer-rn: shared-uniform coupling ordering violated");
    }

    // log E[f^2] versus interval length at a fixed, deliberately strong tilt.
    const std::array<int, 4> lens{10, 20, 40, 80};
    const u64 greps = 20000;
    std::vector<double> xs, ys;
    for (std::size_t li = 0; li < lens.size(); ++li) {
      TiltSpec gs;
      gs.lambda = 0.6;
      gs.eta = 0.5;
      gs.a_lo = 0;
      gs.a_hi = lens[li] - 1;
      gs.b_lo = 0;
      gs.b_hi = -1;
      std::vector<double> gf2(greps);
      parallel_replicas(greps, cfg.threads, [&](u64 rep) {
        const RngStream bstream = RngStream(cfg.seed, rep).substream(72 + li);
        std::vector<double> row(lens[li]);
        for (int j = 0; j < lens[li]; ++j) {
          row[j] = invgamma_quantile(bstream.unit_at(zigzag(j)), 0.5);
        }
        gf2[rep] = std::exp(2.0 * rn_log_derivative_invgamma(row, 0, gs));
      });
      xs.push_back(static_cast<double>(lens[li]));
      ys.push_back(std::log(mean_and_variance(gf2).mean));
    }
    const auto gfit = linear_fit(xs, ys);
    report.add("tilt-polymer-rn", "logEf2_growth_r2", gfit.r_squared, 0.0, 0.0, greps,
               cfg.seed);
    report.add("tilt-polymer-rn", "logEf2_growth_slope", gfit.slope, 0.0, 0.0, greps, cfg.seed);
    if (gfit.r_squared <= 0.99) {
      report.fail("tilt-polymer-rn: log E[f^2] growth R^2 = " + fmt_num(gfit.r_squared));
    }
  }

  // Exit-time event frequencies under the original and tilted boundaries.
  {
    const std::array<double, 3> t_grid{1.0, 1.25, 1.5};
    const u64 ereps = std::min<u64>(cfg.replicas, 4000);
    double c_fit = 0.0;
    std::vector<double> tilted_d1;
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      const double t = t_grid[ti];
      const TiltSpec spec = tilt_parameters(cfg.delta0, t, r, n);
      std::vector<EventDRep> reps(ereps);
      parallel_replicas(ereps, cfg.threads, [&](u64 rep) {
        reps[rep] = event_d_replica(spec, cfg.seed, rep, 80 + ti);
      });
      u64 d1 = 0, d2 = 0, d = 0, td1 = 0, td2 = 0, td = 0;
      double sum_f2 = 0.0;
      for (const auto& x : reps) {
        d1 += x.d1;
        d2 += x.d2;
        d += x.d1 && x.d2;
        td1 += x.td1;
        td2 += x.td2;
        td += x.td1 && x.td2;
        sum_f2 += std::exp(2.0 * x.log_f);
      }
      const double N = static_cast<double>(ereps);
      const double p_d1 = d1 / N, p_d2 = d2 / N, p_d = d / N;
      const double tp_d1 = td1 / N, tp_d2 = td2 / N, tp_d = td / N;
      const double ef2 = sum_f2 / N;
      const std::string tt = "[t=" + fmt_num(t) + "]";
      const auto add_freq = [&](const char* name, double p, u64 hits) {
        const auto w = wilson_interval(static_cast<double>(hits), N);
        report.add("tilt-event-d", name + tt, p, w.lo, w.hi, ereps, cfg.seed);
      };
      add_freq("P_D1", p_d1, d1);
      add_freq("P_D2", p_d2, d2);
      add_freq("P_D", p_d, d);
      add_freq("Pt_D1", tp_d1, td1);
      add_freq("Pt_D2", tp_d2, td2);
      add_freq("Pt_D", tp_d, td);
      report.add("tilt-event-d", "Ef2_mc" + tt, ef2, 0.0, 0.0, ereps, cfg.seed);
      const double slack = p_d * ef2 - tp_d * tp_d;
      report.add("tilt-event-d", "cs_slack" + tt, slack, 0.0, 0.0, ereps, cfg.seed);
      tilted_d1.push_back(tp_d1);
      if (statistical) {
        if (p_d <= 0.0) {
          report.fail("tilt-event-d: P(D) = 0 at t = " + fmt_num(t));
        } else {
          c_fit = std::max(c_fit, -std::log(p_d) / (t * t * t));
        }
        if (slack < 0.0) {
          report.fail("tilt-event-d: Cauchy-Schwarz slack " + fmt_num(slack) + " at t = " +
                      fmt_num(t));
        }
        if (ti == 0) {
          if (!(tp_d1 > tol::kEventDFreq)) {
            report.fail("tilt-event-d: tilted P(D1) = " + fmt_num(tp_d1) + " not above " +
                        fmt_num(tol::kEventDFreq) + " at t = 1");
          }
          if (!(tp_d2 > tol::kEventDFreq)) {
            report.fail("tilt-event-d: tilted P(D2) = " + fmt_num(tp_d2) + " not above " +
                        fmt_num(tol::kEventDFreq) + " at t = 1");
          }
        }
      }
    }
    report.add("tilt-event-d", "C_fit", c_fit, 0.0, 0.0, ereps, cfg.seed);
    const bool increasing = std::is_sorted(tilted_d1.begin(), tilted_d1.end());
    report.add("tilt-event-d", "Pt_D1_trend_monotone", increasing ? 1.0 : 0.0, 0.0, 0.0, ereps,
               cfg.seed);
  }
  return report;
}

// --- validation suite -------------------------------------------------------

namespace {

double brute_force_lpp(const Environment& env, Point z, Point dst, double acc) {
  acc += env.at(z);
  if (z == dst) return acc;
  double best = -1.0;
  if (z.x < dst.x) best = std::max(best, brute_force_lpp(env, z + kE1, dst, acc));
  if (z.y < dst.y) best = std::max(best, brute_force_lpp(env, z + kE2, dst, acc));
  return best;
}

long double brute_force_partition(const Environment& env, Point z, Point dst,
                                  long double prod) {
  prod *= static_cast<long double>(env.at(z));
  if (z == dst) return prod;
  long double sum = 0.0L;
  if (z.x < dst.x) sum += brute_force_partition(env, z + kE1, dst, prod);
  if (z.y < dst.y) sum += brute_force_partition(env, z + kE2, dst, prod);
  return sum;
}

}  // namespace

StatReport run_validation_suite(const ExperimentConfig& cfg) {
  StatReport report;
  const auto check = [&](const char* name, bool ok, double value) {
    report.add("validate", name, value, 0.0, 0.0, 0, cfg.seed);
    if (!ok) report.fail(std::string("validate: ") + name + " = " + fmt_num(value));
  };

  // DP against exhaustive path enumeration, exact float equality.
  {
    u64 mismatches = 0;
    double max_rel = 0.0;
    RngStream shapes(cfg.seed, 0x7368ull);
    for (int g = 0; g < 300; ++g) {
      const int w = 1 + static_cast<int>(shapes.next_u64() % 6);
      const int h = 1 + static_cast<int>(shapes.next_u64() % 6);
      const auto env = sample_environment(w, h, WeightDistribution::exponential(1.0),
                                          RngStream(cfg.seed, 0x4c50ull + g));
      const Point dst{w - 1, h - 1};
      const auto field = bulk_passage_field(env, {0, 0});
      if (field.at(dst) != brute_force_lpp(env, {0, 0}, dst, 0.0)) ++mismatches;
      // The backtracked path must reproduce the value when re-summed in order.
      const auto path = geodesic_backtrack(field, env, dst);
      double s = 0.0;
      for (Point v : path.vertices) s += env.at(v);
      if (s != field.at(dst)) ++mismatches;
    }
    for (int g = 0; g < 150; ++g) {
      const auto env = sample_environment(5, 5, WeightDistribution::inverse_gamma(1.0),
                                          RngStream(cfg.seed, 0x504cull + g));
      const Point dst{4, 4};
      const auto field = bulk_log_partition(env, {0, 0});
      const long double z = brute_force_partition(env, {0, 0}, dst, 1.0L);
      const double rel =
          std::fabs(field.at(dst) - static_cast<double>(std::log(z))) /
          std::max(1.0, std::fabs(field.at(dst)));
      max_rel = std::max(max_rel, rel);
    }
    check("dp_enum_mismatches", mismatches == 0, static_cast<double>(mismatches));
    check("logZ_enum_max_rel", max_rel < tol::kEnumRelTol, max_rel);
  }

  // The two-pass row decomposition must locate the same first-entry column
  // as backtracking the full geodesic.
  {
    u64 mismatches = 0;
    for (int g = 0; g < 100; ++g) {
      const int n = 16, r = 8;
      const auto env = sample_environment(n + 1, n + 1, WeightDistribution::exponential(1.0),
                                          RngStream(cfg.seed, 0x656eull + g));
      const auto fwd = bulk_passage_row(env, {0, 0}, r - 1, n);
      const auto rev = bulk_passage_row_reverse(env, {n, n}, r, 0);
      int best_col = 0;
      double best = fwd[0] + rev[0];
      for (int j = 1; j <= n; ++j) {
        if (fwd[j] + rev[j] >= best) {
          best = fwd[j] + rev[j];
          best_col = j;
        }
      }
      const auto field = bulk_passage_field(env, {0, 0});
      const auto path = geodesic_backtrack(field, env, {n, n});
      int entry = -1;
      for (Point v : path.vertices) {
        if (v.y == r) {
          entry = v.x;
          break;
        }
      }
      if (entry != best_col) ++mismatches;
    }
    check("entry_column_oracle_mismatches", mismatches == 0,
          static_cast<double>(mismatches));
  }

  // Quantile / CDF inverses.
  {
    double max_err = 0.0;
    const std::array<double, 4> shapes{0.3, 0.5, 1.0, 2.0};
    for (double u = 0.02; u < 1.0; u += 0.02) {
      max_err = std::max(max_err, std::fabs(exp_cdf(exp_quantile(u, 0.7), 0.7) - u));
      for (double a : shapes) {
        max_err = std::max(max_err, std::fabs(invgamma_cdf(invgamma_quantile(u, a), a) - u));
      }
    }
    check("quantile_roundtrip_max_err", max_err < 1e-8, max_err);
  }

  // logsumexp and transition-kernel identities.
  {
    double worst = 0.0;
    worst = std::max(worst, std::fabs(logsumexp2(0.0, 0.0) - std::log(2.0)));
    worst = std::max(worst, std::fabs(logsumexp2(0.0, -100.0) - 0.0));
    RngStream rs(cfg.seed, 0x6b65ull);
    double kernel_worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double a = 4.0 * rs.next_unit() - 2.0;
      const double b = 4.0 * rs.next_unit() - 2.0;
      worst = std::max(worst, std::fabs(logsumexp2(a, b) - logsumexp2(b, a)));
      const auto [p1, p2] = polymer_forward_kernel(a, b);
      kernel_worst = std::max(kernel_worst, std::fabs(p1 + p2 - 1.0));
      const auto [q1, q2] = polymer_southwest_kernel(a, b);
      kernel_worst = std::max(kernel_worst, std::fabs(q1 + q2 - 1.0));
    }
    check("logsumexp_identity_err", worst < 1e-12, worst);
    check("kernel_normalization_err", kernel_worst == 0.0, kernel_worst);
  }

  // Counter-based stream: pure addressing and basic uniformity.
  {
    RngStream s(cfg.seed, 42);
    const bool pure = s.word_at(7) == s.word_at(7) &&
                      s.word_at(7) != s.substream(1).word_at(7) &&
                      RngStream(cfg.seed, 42).word_at(7) == s.word_at(7);
    double mean = 0.0;
    for (int k = 0; k < 4096; ++k) mean += s.unit_at(k);
    mean /= 4096.0;
    check("rng_pure_addressing", pure, pure ? 1.0 : 0.0);
    check("rng_unit_mean", std::fabs(mean - 0.5) < 0.02, mean);
  }

  // Exact coupled pairs: cocycle additivity, weight recovery, boundary law.
  {
    double cocycle = 0.0, recovery = 0.0;
    for (int model = 0; model < 2; ++model) {
      CoupledPairSpec spec;
      spec.model = model == 0 ? ModelKind::LPP : ModelKind::Polymer;
      spec.rho = 0.45;
      spec.col_lo = -12;
      spec.col_hi = 12;
      spec.boundary_row = 0;
      spec.rows_below = 8;
      spec.rows_above = 8;
      const auto pair = exact_coupled_pair(spec, RngStream(cfg.seed, 0x6370ull + model));
      const auto& f = pair.field;
      for (int y = -7; y <= 7; ++y) {
        for (int i = -11; i <= 11; ++i) {
          const Point z{i, y};
          const double loop = f.I_incr(z) + f.J_incr(z - kE1) - f.J_incr(z) - f.I_incr(z - kE2);
          cocycle = std::max(cocycle, std::fabs(loop));
        }
      }
      for (int i = -8; i <= 8; ++i) {
        const Point za{i, 2};
        recovery = std::max(recovery, std::fabs(dual_weight(spec.model, f.I_incr(za),
                                                            f.J_incr(za)) -
                                                pair.dual_env.at(za)));
        const Point zb{i, -2};
        const double o1 = f.phi_at(zb + kE1) - f.phi_at(zb);
        const double o2 = f.phi_at(zb + kE2) - f.phi_at(zb);
        recovery = std::max(recovery,
                            std::fabs(dual_weight(spec.model, o1, o2) - pair.primal_env.at(zb)));
      }
    }
    check("cocycle_max_err", cocycle < 1e-12, cocycle);
    check("weight_recovery_max_err", recovery < tol::kMassTol, recovery);
  }

  // Stationary boundary bookkeeping on a small window, against direct sums.
  {
    StationaryBoundarySpec spec;
    spec.rho = 0.5;
    spec.boundary_row = 0;
    spec.source_column = 0;
    spec.win_lo = -3;
    spec.win_hi = 3;
    spec.weights_first = -2;
    spec.boundary_weights = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    double err = std::fabs(spec.boundary_profile(0));
    err = std::max(err, std::fabs(spec.boundary_profile(3) - (2.0 + 2.5 + 3.0)));
    err = std::max(err, std::fabs(spec.boundary_profile(-3) + (0.5 + 1.0 + 1.5)));
    check("boundary_profile_err", err == 0.0, err);
  }

  // Identity tilt leaves the boundary and the density untouched.
  {
    TiltSpec id;
    id.lambda = 0.5;
    id.eta = 0.5;
    id.a_lo = 2;
    id.a_hi = 6;
    id.b_lo = 8;
    id.b_hi = 11;
    RngStream rs(cfg.seed, 0x7469ull);
    std::vector<double> row(14);
    for (auto& x : row) x = exp_quantile(rs.next_unit(), 0.5);
    const auto tb = tilt_boundary_lpp(row, 0, id);
    const bool identical = tb.tilted == tb.original;
    const double log_f = rn_log_derivative_exp(row, 0, id);
    check("identity_tilt_bitwise", identical, identical ? 1.0 : 0.0);
    check("identity_tilt_log_f", log_f == 0.0, log_f);
  }

  // Synthetic exponent fits.
  {
    std::vector<double> t{0.6, 0.8, 1.0, 1.2, 1.4, 1.6}, p3, p1, counts;
    for (double x : t) {
      p3.push_back(std::exp(-2.0 * x * x * x));
      p1.push_back(std::exp(-x));
      counts.push_back(1e9);
    }
    const auto f3 = fit_power_law(t, p3, counts);
    const auto f1 = fit_power_law(t, p1, counts);
    check("fit_cubic_slope_err", std::fabs(f3.slope - 3.0) < 1e-6,
          std::fabs(f3.slope - 3.0));
    check("fit_cubic_intercept_err", std::fabs(f3.intercept - std::log(2.0)) < 1e-6,
          std::fabs(f3.intercept - std::log(2.0)));
    check("fit_linear_slope_err", std::fabs(f1.slope - 1.0) < 1e-6, std::fabs(f1.slope - 1.0));
  }

  // Statistics sanity: Wilson shrinkage, chi-square and KS behavior.
  {
    const auto w1 = wilson_interval(300.0, 1000.0);
    const auto w2 = wilson_interval(600.0, 2000.0);
    const double shrink = (w2.hi - w2.lo) / (w1.hi - w1.lo);
    check("wilson_halving_ratio", std::fabs(shrink - 1.0 / std::sqrt(2.0)) < 0.1, shrink);
    const std::vector<double> counts(8, 125.0);
    const auto chi = chi_square_gof(counts, counts);
    check("chi_square_null_p", chi.p_value == 1.0, chi.p_value);
    std::vector<double> grid(1000);
    for (int k = 0; k < 1000; ++k) grid[k] = (k + 0.5) / 1000.0;
    const auto ks = ks_test(grid, [](double x) { return x; });
    check("ks_uniform_grid_p", ks.p_value > 0.99, ks.p_value);
  }

  // Report serialization round trip.
  {
    StatReport demo;
    demo.add("demo", "a", 1.5, 0.25, 2.75, 10, cfg.seed);
    demo.add("demo", "b", -0.125, 0.0, 0.0, 0, 0);
    const auto tmp = std::filesystem::temp_directory_path() /
                     ("lppsim_validate_" + std::to_string(cfg.seed) + ".json");
    emit_results(demo, tmp.string(), "json");
    const auto loaded = load_json_report(tmp.string());
    std::filesystem::remove(tmp);
    const bool same = loaded.rows == demo.rows &&
                      to_json_string(loaded) == to_json_string(demo);
    check("report_roundtrip", same, same ? 1.0 : 0.0);
  }

  // Full determinism of a small end-to-end experiment.
  {
    ExperimentConfig tiny;
    tiny.experiment = "tail-lpp";
    tiny.n = 24;
    tiny.r = 12;
    tiny.replicas = 64;
    tiny.seed = cfg.seed + 17;
    tiny.threads = cfg.threads;
    tiny.t_grid = {0.8, 1.2};
    const auto a = run_tail_experiment_lpp(tiny);
    const auto b = run_tail_experiment_lpp(tiny);
    const bool same = to_json_string(a) == to_json_string(b);
    check("experiment_determinism", same, same ? 1.0 : 0.0);
  }

  // Finite-horizon increment estimates stay finite and inside the window.
  {
    const auto env = sample_environment(140, 140, WeightDistribution::exponential(1.0),
                                        RngStream(cfg.seed, 0x6265ull));
    const auto est = estimate_busemann(ModelKind::LPP, env, 0.5, {0, 0}, {1, 0},
                                      {40, 80, 120});
    const bool ok = est.differences.size() == 3 &&
                    std::all_of(est.differences.begin(), est.differences.end(),
                                [](double d) { return std::isfinite(d); });
    check("busemann_estimate_finite", ok, est.max_successive_difference);
  }
  return report;
}

}  // namespace lppsim
