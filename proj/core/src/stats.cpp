#include "lppsim/stats.hpp"

#include <algorithm>
#include <cmath>

#include "lppsim/lattice.hpp"
#include "lppsim/special_functions.hpp"

namespace lppsim {

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DimensionError("ks_test: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  KsResult res;
  res.statistic = d;
  res.n = samples.size();
  const double sn = std::sqrt(n);
  res.p_value = kolmogorov_ccdf((sn + 0.12 + 0.11 / sn) * d);
  return res;
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.size() < 2) {
    throw DimensionError("chi_square_gof: need matching bins, at least 2");
  }
  ChiSquareResult res;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    if (expected[k] <= 0.0) throw DimensionError("chi_square_gof: nonpositive expected count");
    const double diff = observed[k] - expected[k];
    res.statistic += diff * diff / expected[k];
  }
  res.dof = static_cast<int>(observed.size()) - 1;
  res.p_value = reg_upper_gamma(res.dof / 2.0, res.statistic / 2.0);
  return res;
}

WilsonInterval wilson_interval(double successes, double trials, double z) {
  if (trials <= 0.0) throw DimensionError("wilson_interval: no trials");
  const double p = successes / trials;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / trials;
  const double center = (p + z2 / (2.0 * trials)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

MeanVar mean_and_variance(const std::vector<double>& xs) {
  if (xs.empty()) throw DimensionError("mean_and_variance: empty sample");
  MeanVar mv;
  mv.n = xs.size();
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  mv.mean = mean;
  mv.variance = xs.size() > 1 ? ss / static_cast<double>(xs.size() - 1) : 0.0;
  mv.std_error = std::sqrt(mv.variance / static_cast<double>(xs.size()));
  return mv;
}

double correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw DimensionError("correlation: need two equal-length samples of size >= 2");
  }
  const auto mx = mean_and_variance(xs);
  const auto my = mean_and_variance(ys);
  double cov = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cov += (xs[i] - mx.mean) * (ys[i] - my.mean);
  }
  cov /= static_cast<double>(xs.size() - 1);
  return cov / std::sqrt(mx.variance * my.variance);
}

namespace {

struct FitPoint {
  double x;   // log t
  double y;   // log(-log p)
  double vy;  // delta-method variance of y
};

std::vector<FitPoint> usable_points(const std::vector<double>& t, const std::vector<double>& p,
                                    const std::vector<double>& counts, double min_count) {
  if (t.size() != p.size() || t.size() != counts.size()) {
    throw DimensionError("fit_power_law: mismatched inputs");
  }
  std::vector<FitPoint> pts;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(p[i] > 0.0 && p[i] < 1.0) || t[i] <= 0.0) continue;
    if (p[i] * counts[i] < min_count) continue;
    FitPoint pt;
    pt.x = std::log(t[i]);
    const double lp = std::log(p[i]);
    pt.y = std::log(-lp);
    pt.vy = (1.0 - p[i]) / (counts[i] * p[i] * lp * lp);
    pts.push_back(pt);
  }
  return pts;
}

PowerLawFit fit_points(const std::vector<FitPoint>& pts) {
  if (pts.size() < 3) {
    throw NumericError("fit_power_law: fewer than 3 usable points");
  }
  double sx = 0.0, sy = 0.0;
  for (const auto& pt : pts) {
    sx += pt.x;
    sy += pt.y;
  }
  const double n = static_cast<double>(pts.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& pt : pts) {
    sxx += (pt.x - mx) * (pt.x - mx);
    sxy += (pt.x - mx) * (pt.y - my);
  }
  if (sxx == 0.0) throw NumericError("fit_power_law: degenerate abscissae");
  PowerLawFit fit;
  fit.points_used = static_cast<int>(pts.size());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0, ss_tot = 0.0, var_slope = 0.0;
  for (const auto& pt : pts) {
    const double yhat = fit.intercept + fit.slope * pt.x;
    ss_res += (pt.y - yhat) * (pt.y - yhat);
    ss_tot += (pt.y - my) * (pt.y - my);
    const double c = (pt.x - mx) / sxx;  // OLS slope weight of this point
    var_slope += c * c * pt.vy;
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.slope_se = std::sqrt(var_slope);
  const double z = 1.959963985;
  fit.slope_ci_lo = fit.slope - z * fit.slope_se;
  fit.slope_ci_hi = fit.slope + z * fit.slope_se;
  return fit;
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<double>& t, const std::vector<double>& p,
                          const std::vector<double>& counts, double min_count) {
  return fit_points(usable_points(t, p, counts, min_count));
}

BootstrapInterval bootstrap_power_law_slope(const std::vector<double>& t,
                                            const std::vector<double>& p,
                                            const std::vector<double>& counts, int n_boot,
                                            RngStream& stream, double min_count) {
  if (n_boot < 10) throw DimensionError("bootstrap_power_law_slope: too few resamples");
  std::vector<double> slopes;
  slopes.reserve(n_boot);
  std::vector<double> pb(p.size());
  for (int b = 0; b < n_boot; ++b) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double se = std::sqrt(std::max(p[i] * (1.0 - p[i]), 0.0) / counts[i]);
      const double z = normal_quantile(stream.next_unit());
      pb[i] = std::clamp(p[i] + z * se, 1e-12, 1.0 - 1e-12);
    }
    try {
      slopes.push_back(fit_power_law(t, pb, counts, min_count).slope);
    } catch (const NumericError&) {
      // A resample can lose points; skip it.
    }
  }
  if (slopes.size() < 10) {
    throw NumericError("bootstrap_power_law_slope: too few successful resamples");
  }
  std::sort(slopes.begin(), slopes.end());
  const auto idx = [&](double q) {
    return slopes[static_cast<std::size_t>(q * (slopes.size() - 1))];
  };
  return {idx(0.05), idx(0.95)};
}

}  // namespace lppsim
