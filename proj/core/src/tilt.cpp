#include "lppsim/tilt.hpp"

#include <cmath>
#include <string>

#include "lppsim/distributions.hpp"

namespace lppsim {

TiltSpec tilt_parameters(double delta0, double t, int r, int n) {
  if (!(delta0 > 0.0 && delta0 <= 0.04)) {
    throw ParameterRangeError("tilt_parameters: delta0 must be in (0, 0.04]");
  }
  if (!(t >= 1.0)) {
    throw ParameterRangeError("tilt_parameters: t must be >= 1");
  }
  if (!(r >= 1 && 2 * r <= n)) {
    throw ParameterRangeError("tilt_parameters: need 1 <= r <= n/2");
  }
  TiltSpec s;
  s.delta0 = delta0;
  s.t = t;
  s.r = r;
  s.n = n;
  s.a1 = delta0;
  s.a2 = 100.0 * delta0;
  s.b1 = std::sqrt(delta0);
  s.b2 = 100.0 * std::sqrt(delta0);
  s.q1 = delta0;
  s.q2 = std::sqrt(delta0);
  s.lambda = 0.5 + s.q1 * t * std::pow(r, -1.0 / 3.0);
  s.eta = 0.5 - s.q2 * t * std::pow(n - r, -1.0 / 3.0);
  if (!(s.lambda >= 1.0 / 3.0 && s.lambda <= 2.0 / 3.0 && s.eta >= 1.0 / 3.0 &&
        s.eta <= 2.0 / 3.0)) {
    throw ParameterRangeError("tilt_parameters: lambda/eta outside [1/3, 2/3] (t too large)");
  }
  const double r23 = std::pow(r, 2.0 / 3.0);
  const double m23 = std::pow(n - r, 2.0 / 3.0);
  s.d1_lo = static_cast<int>(std::floor(s.a1 * t * r23));
  s.d1_hi = static_cast<int>(std::floor(s.a2 * t * r23));
  s.d2_lo = static_cast<int>(std::floor(s.b1 * t * m23));
  s.a_lo = r + s.d1_lo + 1;
  s.a_hi = r + s.d1_hi;
  s.raw_b_lo = r + s.d2_lo + 1;
  s.b_lo = std::max(s.raw_b_lo, s.a_hi + 1);
  s.b_hi = r + static_cast<int>(std::floor(s.b2 * t * m23));
  if (s.b_hi < s.b_lo) {
    s.b_lo = 0;
    s.b_hi = -1;
  }
  return s;
}

namespace {

void require_coverage(int first_column, std::size_t len, const TiltSpec& spec,
                      const char* who) {
  const int last = first_column + static_cast<int>(len) - 1;
  const bool cover_A = spec.size_A() == 0 || (first_column <= spec.a_lo && last >= spec.a_hi);
  const bool cover_B = spec.size_B() == 0 || (first_column <= spec.b_lo && last >= spec.b_hi);
  if (!cover_A || !cover_B) {
    throw CoverageError(std::string(who) + ": row does not cover the tilt intervals");
  }
}

}  // namespace

TiltedBoundary tilt_boundary_lpp(const std::vector<double>& I_row, int first_column,
                                 const TiltSpec& spec) {
  require_coverage(first_column, I_row.size(), spec, "tilt_boundary_lpp");
  TiltedBoundary tb;
  tb.model = ModelKind::LPP;
  tb.spec = spec;
  tb.first_column = first_column;
  tb.original = I_row;
  tb.tilted = I_row;
  for (int j = spec.a_lo; j <= spec.a_hi; ++j) {
    tb.tilted[j - first_column] *= 0.5 / spec.lambda;
  }
  for (int j = spec.b_lo; j <= spec.b_hi; ++j) {
    tb.tilted[j - first_column] *= 0.5 / spec.eta;
  }
  return tb;
}

TiltedBoundary tilt_boundary_invgamma(const std::vector<double>& uniforms, int first_column,
                                      const TiltSpec& spec) {
  require_coverage(first_column, uniforms.size(), spec, "tilt_boundary_invgamma");
  TiltedBoundary tb;
  tb.model = ModelKind::Polymer;
  tb.spec = spec;
  tb.first_column = first_column;
  tb.original.resize(uniforms.size());
  tb.tilted.resize(uniforms.size());
  for (std::size_t k = 0; k < uniforms.size(); ++k) {
    const int j = first_column + static_cast<int>(k);
    const double base = invgamma_quantile(uniforms[k], 0.5);
    tb.original[k] = base;
    if (spec.in_A(j)) {
      tb.tilted[k] = invgamma_quantile(uniforms[k], spec.lambda);
    } else if (spec.in_B(j)) {
      tb.tilted[k] = invgamma_quantile(uniforms[k], spec.eta);
    } else {
      tb.tilted[k] = base;
    }
  }
  return tb;
}

double rn_log_derivative_exp(const std::vector<double>& I_row, int first_column,
                             const TiltSpec& spec) {
  require_coverage(first_column, I_row.size(), spec, "rn_log_derivative_exp");
  // Per site: log( a e^{-a x} / ((1/2) e^{-x/2}) ) = log(2a) + (1/2 - a) x.
  double log_f = 0.0;
  const double la = std::log(2.0 * spec.lambda);
  const double le = std::log(2.0 * spec.eta);
  for (int j = spec.a_lo; j <= spec.a_hi; ++j) {
    log_f += la + (0.5 - spec.lambda) * I_row[j - first_column];
  }
  for (int j = spec.b_lo; j <= spec.b_hi; ++j) {
    log_f += le + (0.5 - spec.eta) * I_row[j - first_column];
  }
  return log_f;
}

double rn_log_derivative_invgamma(const std::vector<double>& I_row, int first_column,
                                  const TiltSpec& spec) {
  require_coverage(first_column, I_row.size(), spec, "rn_log_derivative_invgamma");
  // Ga^{-1}(a) density: x^{-a-1} e^{-1/x} / Gamma(a); the ratio against
  // Ga^{-1}(1/2) leaves log Gamma(1/2) - log Gamma(a) + (1/2 - a) log x.
  const double lg_half = std::lgamma(0.5);
  double log_f = 0.0;
  const double ca = lg_half - std::lgamma(spec.lambda);
  const double ce = lg_half - std::lgamma(spec.eta);
  for (int j = spec.a_lo; j <= spec.a_hi; ++j) {
    log_f += ca + (0.5 - spec.lambda) * std::log(I_row[j - first_column]);
  }
  for (int j = spec.b_lo; j <= spec.b_hi; ++j) {
    log_f += ce + (0.5 - spec.eta) * std::log(I_row[j - first_column]);
  }
  return log_f;
}

double rn_second_moment_closed_form(const TiltSpec& spec) {
  const double da = 2.0 * spec.lambda - 0.5;
  const double de = 2.0 * spec.eta - 0.5;
  if (!(da > 0.0 && de > 0.0)) {
    throw ParameterRangeError("rn_second_moment_closed_form: needs lambda, eta > 1/4");
  }
  const double log_site_a = std::log(spec.lambda * spec.lambda / (0.5 * da));
  const double log_site_b = std::log(spec.eta * spec.eta / (0.5 * de));
  return std::exp(spec.size_A() * log_site_a + spec.size_B() * log_site_b);
}

double rn_invgamma_site_second_moment(double alpha) {
  if (!(alpha > 0.25)) {
    throw ParameterRangeError("rn_invgamma_site_second_moment: needs alpha > 1/4");
  }
  return std::exp(std::lgamma(0.5) + std::lgamma(2.0 * alpha - 0.5) -
                  2.0 * std::lgamma(alpha));
}

}  // namespace lppsim
