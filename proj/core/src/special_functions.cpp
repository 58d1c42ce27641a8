#include "lppsim/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lppsim/lattice.hpp"

namespace lppsim {

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: x must be positive");
  double acc = 0.0;
  while (x < 8.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // ln x - 1/(2x) - sum B_{2n} / (2n x^{2n})
  double series = -1.0 / 12.0;
  double p = inv2;
  double result = std::log(x) - 0.5 * inv + series * p;
  p *= inv2;
  result += (1.0 / 120.0) * p;
  p *= inv2;
  result += (-1.0 / 252.0) * p;
  p *= inv2;
  result += (1.0 / 240.0) * p;
  p *= inv2;
  result += (-1.0 / 132.0) * p;
  p *= inv2;
  result += (691.0 / 32760.0) * p;
  p *= inv2;
  result += (-1.0 / 12.0) * p;
  return result + acc;
}

double trigamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("trigamma: x must be positive");
  double acc = 0.0;
  while (x < 8.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // 1/x + 1/(2x^2) + sum B_{2n} x^{-(2n+1)}
  double result = inv + 0.5 * inv2;
  double p = inv * inv2;
  result += (1.0 / 6.0) * p;
  p *= inv2;
  result += (-1.0 / 30.0) * p;
  p *= inv2;
  result += (1.0 / 42.0) * p;
  p *= inv2;
  result += (-1.0 / 30.0) * p;
  p *= inv2;
  result += (5.0 / 66.0) * p;
  p *= inv2;
  result += (-691.0 / 2730.0) * p;
  return result + acc;
}

namespace {

// Series expansion of P(a,x), good for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x) (modified Lentz), good for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double reg_lower_gamma(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("reg_lower_gamma: shape must be positive");
  if (x < 0.0) throw std::domain_error("reg_lower_gamma: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double reg_upper_gamma(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("reg_upper_gamma: shape must be positive");
  if (x < 0.0) throw std::domain_error("reg_upper_gamma: x must be nonnegative");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must be in (0,1)");
  // Acklam's rational approximation, then one Halley step against erfc.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  x = x - u / (1.0 + x * u / 2.0);
  return x;
}

double gamma_quantile(double p, double shape) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gamma_quantile: p must be in (0,1)");
  if (!(shape > 0.0)) throw std::domain_error("gamma_quantile: shape must be positive");

  double x;
  if (shape > 0.3) {
    // Wilson-Hilferty.
    const double z = normal_quantile(p);
    const double g = 1.0 - 1.0 / (9.0 * shape) + z / (3.0 * std::sqrt(shape));
    x = shape * g * g * g;
    if (!(x > 0.0)) x = shape * std::exp((std::log(p) + std::lgamma(shape + 1.0)) / shape) / shape;
  } else {
    x = std::exp((std::log(p) + std::lgamma(shape + 1.0)) / shape);
  }
  if (!(x > 0.0) || !std::isfinite(x)) x = shape;

  // Establish a bracket around the root.
  double lo = 0.0;
  double hi = x;
  while (reg_lower_gamma(shape, hi) < p) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericError("gamma_quantile: bracket expansion failed");
  }
  if (reg_lower_gamma(shape, x) > p) {
    lo = 0.0;
  }

  const double lg = std::lgamma(shape);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = reg_lower_gamma(shape, x) - p;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double pdf = std::exp((shape - 1.0) * std::log(x) - x - lg);
    double step = (pdf > 0.0) ? f / pdf : 0.0;
    double xn = x - step;
    if (!(xn > lo && xn < hi) || pdf == 0.0) {
      xn = 0.5 * (lo + hi);  // bisection fallback
    }
    const double delta = std::fabs(xn - x);
    x = xn;
    if (delta <= 1e-12 * x) return x;
  }
  if (hi - lo <= 1e-10 * x) return x;
  throw NumericError("gamma_quantile: no convergence after 200 iterations (p=" +
                     std::to_string(p) + ", shape=" + std::to_string(shape) + ")");
}

double kolmogorov_ccdf(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-16) break;
  }
  const double q = 2.0 * sum;
  if (q < 0.0) return 0.0;
  if (q > 1.0) return 1.0;
  return q;
}

}  // namespace lppsim
