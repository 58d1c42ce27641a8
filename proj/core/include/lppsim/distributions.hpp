#pragma once

#include <map>
#include <vector>

#include "lppsim/rng.hpp"

namespace lppsim {

/// Quantile of Exp(rate): -ln(1-u)/rate.
double exp_quantile(double u, double rate);

/// Quantile of the inverse-gamma law with the given shape:
/// 1 / Q_Gamma(1-u; shape). Strictly increasing in u and decreasing in
/// shape (monotone coupling through shared uniforms).
double invgamma_quantile(double u, double shape);

double exp_cdf(double x, double rate);
double invgamma_cdf(double x, double shape);

/// Bulk weight law: Exp(rate) or Ga^{-1}(shape).
struct WeightDistribution {
  enum class Kind { Exponential, InverseGamma };

  Kind kind{Kind::Exponential};
  double param{1.0};  // rate for Exponential, shape for InverseGamma

  static WeightDistribution exponential(double rate);
  static WeightDistribution inverse_gamma(double shape);

  double quantile(double u) const;
  double cdf(double x) const;
  /// 1/rate, or 1/(shape-1) for shape > 1.
  double mean() const;

  friend bool operator==(const WeightDistribution& a, const WeightDistribution& b) {
    return a.kind == b.kind && a.param == b.param;
  }
};

/// One shared uniform per site, realized at several inverse-gamma shapes.
/// For shapes a1 > a2 the realizations satisfy w^{a1}_j <= w^{a2}_j sitewise.
struct CoupledBoundaryRow {
  std::vector<double> uniforms;
  std::map<double, std::vector<double>> realized;
};

CoupledBoundaryRow couple_boundary(int length, const std::vector<double>& shapes,
                                   RngStream& stream);

}  // namespace lppsim
