#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lppsim/rng.hpp"

namespace lppsim {

struct KsResult {
  double statistic{0.0};
  double p_value{1.0};
  std::size_t n{0};
};

/// One-sample Kolmogorov-Smirnov test against a continuous CDF. The p-value
/// uses the Stephens small-sample correction (sqrt(n)+0.12+0.11/sqrt(n))*D.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

struct ChiSquareResult {
  double statistic{0.0};
  int dof{0};
  double p_value{1.0};
};

/// Goodness of fit of observed counts against expected counts (same total).
ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected);

struct WilsonInterval {
  double lo{0.0};
  double hi{1.0};
};

/// Wilson score interval; successes may be fractional (mean of [0,1] masses).
WilsonInterval wilson_interval(double successes, double trials, double z = 1.959963985);

struct MeanVar {
  double mean{0.0};
  double variance{0.0};  // unbiased sample variance
  double std_error{0.0};
  std::size_t n{0};
};

MeanVar mean_and_variance(const std::vector<double>& xs);

/// Sample Pearson correlation of two equal-length sequences.
double correlation(const std::vector<double>& xs, const std::vector<double>& ys);

struct PowerLawFit {
  double slope{0.0};
  double intercept{0.0};
  double r_squared{0.0};
  double slope_se{0.0};
  double slope_ci_lo{0.0};
  double slope_ci_hi{0.0};
  int points_used{0};
};

/// Ordinary least squares of log(-log p) on log t. Points with p outside
/// (0,1) or with fewer than min_count successes are dropped; fewer than 3
/// surviving points raises NumericError. The slope standard error comes from
/// the binomial delta method: Var[log(-log p)] = (1-p)/(N p (log p)^2).
PowerLawFit fit_power_law(const std::vector<double>& t, const std::vector<double>& p,
                          const std::vector<double>& counts, double min_count = 50.0);

/// Percentile bootstrap interval for the power-law slope, resampling each
/// point's success probability from its binomial sampling distribution
/// (normal approximation).
struct BootstrapInterval {
  double lo{0.0};
  double hi{0.0};
};

BootstrapInterval bootstrap_power_law_slope(const std::vector<double>& t,
                                            const std::vector<double>& p,
                                            const std::vector<double>& counts, int n_boot,
                                            RngStream& stream, double min_count = 50.0);

}  // namespace lppsim
