#include "lppsim/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "lppsim/lattice.hpp"
#include "lppsim/special_functions.hpp"

namespace lppsim {

double exp_quantile(double u, double rate) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("exp_quantile: u must be in (0,1)");
  if (!(rate > 0.0)) throw std::domain_error("exp_quantile: rate must be positive");
  return -std::log1p(-u) / rate;
}

double invgamma_quantile(double u, double shape) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("invgamma_quantile: u must be in (0,1)");
  if (!(shape > 0.0)) throw std::domain_error("invgamma_quantile: shape must be positive");
  if (shape == 1.0) {
    // Gamma(1) is Exp(1): Q_Gamma(1-u; 1) = -ln u.
    return -1.0 / std::log(u);
  }
  return 1.0 / gamma_quantile(1.0 - u, shape);
}

double exp_cdf(double x, double rate) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-rate * x);
}

double invgamma_cdf(double x, double shape) {
  if (x <= 0.0) return 0.0;
  return reg_upper_gamma(shape, 1.0 / x);
}

WeightDistribution WeightDistribution::exponential(double rate) {
  if (!(rate > 0.0)) throw std::domain_error("WeightDistribution: rate must be positive");
  return {Kind::Exponential, rate};
}

WeightDistribution WeightDistribution::inverse_gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("WeightDistribution: shape must be positive");
  return {Kind::InverseGamma, shape};
}

double WeightDistribution::quantile(double u) const {
  return kind == Kind::Exponential ? exp_quantile(u, param) : invgamma_quantile(u, param);
}

double WeightDistribution::cdf(double x) const {
  return kind == Kind::Exponential ? exp_cdf(x, param) : invgamma_cdf(x, param);
}

double WeightDistribution::mean() const {
  if (kind == Kind::Exponential) return 1.0 / param;
  if (param <= 1.0) throw std::domain_error("WeightDistribution: inverse-gamma mean needs shape > 1");
  return 1.0 / (param - 1.0);
}

CoupledBoundaryRow couple_boundary(int length, const std::vector<double>& shapes,
                                   RngStream& stream) {
  if (length < 1) throw DimensionError("couple_boundary: length must be >= 1");
  if (shapes.empty()) throw std::invalid_argument("couple_boundary: shapes must be non-empty");
  CoupledBoundaryRow row;
  row.uniforms.resize(length);
  for (int j = 0; j < length; ++j) row.uniforms[j] = stream.next_unit();
  for (double shape : shapes) {
    std::vector<double> w(length);
    for (int j = 0; j < length; ++j) w[j] = invgamma_quantile(row.uniforms[j], shape);
    row.realized.emplace(shape, std::move(w));
  }
  return row;
}

}  // namespace lppsim
