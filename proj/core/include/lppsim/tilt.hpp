#pragma once

#include <vector>

#include "lppsim/busemann.hpp"
#include "lppsim/lattice.hpp"

namespace lppsim {

/// Tilt schedule for the two-interval boundary perturbation. Columns are
/// absolute boundary columns; I_j denotes the weight on the edge into
/// column j. interval_A carries the lowered (rate-lambda) weights and
/// interval_B the raised (rate-eta) weights; when the raw intervals overlap
/// (which happens for delta0 > 1e-4), interval_B is clipped to start right
/// after interval_A so the two stay disjoint.
struct TiltSpec {
  double delta0{0.01};
  double t{1.0};
  int r{0};
  int n{0};

  double a1{0}, a2{0}, b1{0}, b2{0}, q1{0}, q2{0};
  double lambda{0.5};
  double eta{0.5};

  int a_lo{0}, a_hi{-1};  // interval_A columns, inclusive; empty when a_lo > a_hi
  int b_lo{0}, b_hi{-1};  // interval_B columns after clipping
  int raw_b_lo{0};        // interval_B left end before clipping

  // Event thresholds: D1 = {tau - r in [d1_lo, d1_hi]}, D2 = {tau - r >= d2_lo}.
  int d1_lo{0}, d1_hi{0}, d2_lo{0};

  int size_A() const { return a_hi >= a_lo ? a_hi - a_lo + 1 : 0; }
  int size_B() const { return b_hi >= b_lo ? b_hi - b_lo + 1 : 0; }
  bool in_A(int j) const { return j >= a_lo && j <= a_hi; }
  bool in_B(int j) const { return j >= b_lo && j <= b_hi; }
};

/// Derived parameters: a1=d0, a2=100 d0, b1=sqrt(d0), b2=100 sqrt(d0),
/// q1=d0, q2=sqrt(d0); lambda = 1/2 + q1 t r^{-1/3}, eta = 1/2 - q2 t
/// (n-r)^{-1/3}, both required to stay in [1/3, 2/3].
TiltSpec tilt_parameters(double delta0, double t, int r, int n);

struct TiltedBoundary {
  ModelKind model{ModelKind::LPP};
  TiltSpec spec;
  int first_column{0};            // column of index 0 (edge into that column)
  std::vector<double> original;   // I_j at the stationary parameter 1/2
  std::vector<double> tilted;     // tilted row, equal to original off-interval
};

/// Exponential tilt: multiply by (1/2)/lambda on interval_A and (1/2)/eta on
/// interval_B, turning Exp(1/2) weights into Exp(lambda)/Exp(eta).
TiltedBoundary tilt_boundary_lpp(const std::vector<double>& I_row, int first_column,
                                 const TiltSpec& spec);

/// Inverse-gamma tilt: realize the row from shared uniforms at shape 1/2,
/// and on the intervals at shapes lambda/eta, so that the monotone coupling
/// I^lambda <= I^{1/2} <= I^eta holds sitewise.
TiltedBoundary tilt_boundary_invgamma(const std::vector<double>& uniforms, int first_column,
                                      const TiltSpec& spec);

/// log f where f = dP~^{lambda,eta}/dP^{1/2} for the exponential boundary,
/// evaluated at the original weights.
double rn_log_derivative_exp(const std::vector<double>& I_row, int first_column,
                             const TiltSpec& spec);

/// log f for the inverse-gamma boundary (density ratios of Ga^{-1}(lambda)
/// resp. Ga^{-1}(eta) against Ga^{-1}(1/2)), at the original weights.
double rn_log_derivative_invgamma(const std::vector<double>& I_row, int first_column,
                                  const TiltSpec& spec);

/// Closed-form E[f^2] for the exponential tilt:
/// (lambda^2/((1/2)(2 lambda - 1/2)))^{|A|} * (eta^2/((1/2)(2 eta - 1/2)))^{|B|}.
double rn_second_moment_closed_form(const TiltSpec& spec);

/// Per-site E[f^2] for one inverse-gamma tilted site at shape alpha:
/// Gamma(1/2) Gamma(2 alpha - 1/2) / Gamma(alpha)^2. Requires alpha > 1/4.
double rn_invgamma_site_second_moment(double alpha);

}  // namespace lppsim
