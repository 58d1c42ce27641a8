#pragma once

namespace lppsim {

/// Digamma Psi_0, absolute accuracy better than 1e-10 for x > 0.
/// Upward recurrence to x >= 8, then the asymptotic series.
double digamma(double x);

/// Trigamma Psi_1, same scheme as digamma.
double trigamma(double x);

/// Regularized lower incomplete gamma P(a, x).
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double reg_upper_gamma(double a, double x);

/// Inverse of P(a, .): returns x with P(shape, x) = p, relative tolerance
/// 1e-12. Wilson-Hilferty initial guess refined by safeguarded Newton,
/// capped at 200 iterations.
double gamma_quantile(double p, double shape);

/// Standard normal quantile.
double normal_quantile(double p);

/// Complementary CDF of the Kolmogorov distribution,
/// Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_ccdf(double x);

}  // namespace lppsim
