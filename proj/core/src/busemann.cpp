#include "lppsim/busemann.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "lppsim/distributions.hpp"
#include "lppsim/lpp.hpp"
#include "lppsim/polymer.hpp"

namespace lppsim {

double dual_weight(ModelKind model, double b1, double b2) {
  if (model == ModelKind::LPP) return std::min(b1, b2);
  return std::exp(-logsumexp2(-b1, -b2));
}

CoupledPair exact_coupled_pair(const CoupledPairSpec& spec, const RngStream& stream) {
  if (spec.col_hi <= spec.col_lo || spec.rows_below < 1 || spec.rows_above < 1) {
    throw DimensionError("exact_coupled_pair: degenerate geometry");
  }
  if (!(spec.rho > 0.0 && spec.rho < 1.0)) {
    throw ParameterRangeError("exact_coupled_pair: rho must be in (0,1)");
  }
  const int width = spec.col_hi - spec.col_lo + 1;
  const bool polymer = spec.model == ModelKind::Polymer;

  CoupledPair pair;
  RngStream boundary_stream = stream.substream(0);
  pair.boundary_increments.resize(width - 1);
  for (int k = 0; k < width - 1; ++k) {
    const double u = boundary_stream.next_unit();
    pair.boundary_increments[k] = polymer ? std::log(invgamma_quantile(u, spec.rho))
                                          : exp_quantile(u, spec.rho);
  }

  const auto bulk = polymer ? WeightDistribution::inverse_gamma(1.0)
                            : WeightDistribution::exponential(1.0);
  pair.primal_env =
      sample_environment(width, spec.rows_below, bulk, stream.substream(1),
                         {spec.col_lo, spec.boundary_row - spec.rows_below});
  pair.dual_env = sample_environment(width, spec.rows_above, bulk, stream.substream(2),
                                     {spec.col_lo, spec.boundary_row + 1});

  BusemannField& f = pair.field;
  f.model = spec.model;
  f.rho = spec.rho;
  f.provenance = BusemannProvenance::ExactStationaryRow;
  f.boundary_row = spec.boundary_row;
  f.origin = {spec.col_lo, spec.boundary_row - spec.rows_below};
  f.width = width;
  f.height = spec.rows_below + 1 + spec.rows_above;
  f.phi.resize(static_cast<std::size_t>(f.width) * f.height);

  f.phi_mut({spec.col_lo, spec.boundary_row}) = 0.0;
  for (int j = spec.col_lo + 1; j <= spec.col_hi; ++j) {
    f.phi_mut({j, spec.boundary_row}) =
        f.phi_at({j - 1, spec.boundary_row}) + pair.boundary_increments[j - spec.col_lo - 1];
  }

  // Above the row: south stationary recursion in the dual weights.
  for (int y = spec.boundary_row + 1; y <= spec.boundary_row + spec.rows_above; ++y) {
    for (int i = spec.col_lo; i <= spec.col_hi; ++i) {
      const Point z{i, y};
      double acc = f.phi_at(z - kE2);
      if (i > spec.col_lo) {
        acc = polymer ? logsumexp2(acc, f.phi_at(z - kE1)) : std::max(acc, f.phi_at(z - kE1));
      }
      const double w = pair.dual_env.at(z);
      f.phi_mut(z) = acc + (polymer ? std::log(w) : w);
    }
  }

  // Below the row: reversed recursion, built so the minimum of the two
  // outgoing increments recovers the primal weight at z.
  for (int y = spec.boundary_row - 1; y >= spec.boundary_row - spec.rows_below; --y) {
    for (int i = spec.col_hi; i >= spec.col_lo; --i) {
      const Point z{i, y};
      double acc = -f.phi_at(z + kE2);
      if (i < spec.col_hi) {
        acc = polymer ? logsumexp2(acc, -f.phi_at(z + kE1))
                      : std::max(acc, -f.phi_at(z + kE1));
      }
      const double w = pair.primal_env.at(z);
      f.phi_mut(z) = -(acc + (polymer ? std::log(w) : w));
    }
  }
  return pair;
}

BusemannEstimate estimate_busemann(ModelKind model, const Environment& env, double rho, Point x,
                                   Point y, const std::vector<int>& horizons) {
  if (horizons.empty()) throw DimensionError("estimate_busemann: no horizons");
  const auto xi = model == ModelKind::LPP ? characteristic_direction_lpp(rho)
                                          : characteristic_direction_polymer(rho);
  const double s = xi.first + xi.second;
  BusemannEstimate est;
  est.horizons = horizons;
  double prev = 0.0;
  for (std::size_t k = 0; k < horizons.size(); ++k) {
    const int n = horizons[k];
    if (k > 0 && n <= horizons[k - 1]) {
      throw DimensionError("estimate_busemann: horizons must be increasing");
    }
    const Point target{static_cast<int>(std::lround(2.0 * n * xi.first / s)),
                       static_cast<int>(std::lround(2.0 * n * xi.second / s))};
    if (!env.contains(target)) {
      throw DimensionError("estimate_busemann: horizon target outside environment");
    }
    double diff = 0.0;
    if (x != y) {
      if (model == ModelKind::LPP) {
        const auto gx = bulk_passage_row(env, x, target.y, target.x);
        const auto gy = bulk_passage_row(env, y, target.y, target.x);
        diff = gx[target.x - x.x] - gy[target.x - y.x];
      } else {
        const auto zx = bulk_log_partition_row(env, x, target.y, target.x);
        const auto zy = bulk_log_partition_row(env, y, target.y, target.x);
        diff = zx[target.x - x.x] - zy[target.x - y.x];
      }
    }
    est.targets.push_back(target);
    est.differences.push_back(diff);
    if (k > 0) {
      est.max_successive_difference =
          std::max(est.max_successive_difference, std::fabs(diff - prev));
    }
    prev = diff;
  }
  return est;
}

namespace {

void require_lpp(const BusemannField& field, const char* who) {
  if (field.model != ModelKind::LPP) {
    throw DimensionError(std::string(who) + ": deterministic step rule is LPP-only");
  }
}

void require_covered(const BusemannField& field, Point p, const char* who) {
  if (!field.contains(p)) {
    throw CoverageError(std::string(who) + ": increments missing at (" + std::to_string(p.x) +
                        "," + std::to_string(p.y) + ")");
  }
}

}  // namespace

SemiInfinitePathPrefix forward_path_from_busemann(const BusemannField& field, Point x,
                                                 int steps) {
  require_lpp(field, "forward_path_from_busemann");
  SemiInfinitePathPrefix prefix;
  prefix.start = x;
  prefix.direction = PathDirection::NorthEast;
  Point z = x;
  require_covered(field, z, "forward_path_from_busemann");
  prefix.path.vertices.push_back(z);
  for (int k = 0; k < steps; ++k) {
    require_covered(field, z + kE1, "forward_path_from_busemann");
    require_covered(field, z + kE2, "forward_path_from_busemann");
    z = field.phi_at(z + kE1) <= field.phi_at(z + kE2) ? z + kE1 : z + kE2;
    prefix.path.vertices.push_back(z);
  }
  return prefix;
}

SemiInfinitePathPrefix southwest_path_from_busemann(const BusemannField& field, Point x,
                                                   int steps) {
  require_lpp(field, "southwest_path_from_busemann");
  SemiInfinitePathPrefix prefix;
  prefix.start = x;
  prefix.direction = PathDirection::SouthWest;
  Point z = x;
  require_covered(field, z, "southwest_path_from_busemann");
  prefix.path.vertices.push_back(z);
  for (int k = 0; k < steps; ++k) {
    require_covered(field, z - kE1, "southwest_path_from_busemann");
    require_covered(field, z - kE2, "southwest_path_from_busemann");
    z = field.phi_at(z - kE1) >= field.phi_at(z - kE2) ? z - kE1 : z - kE2;
    prefix.path.vertices.push_back(z);
  }
  return prefix;
}

std::pair<double, double> polymer_forward_kernel(double log_I_xpe1, double log_J_xpe2) {
  // J_{x+e2} / (I_{x+e1} + J_{x+e2}) computed through one stable ratio.
  const double p_e1 = 1.0 / (1.0 + std::exp(log_I_xpe1 - log_J_xpe2));
  return {p_e1, 1.0 - p_e1};
}

std::pair<double, double> polymer_southwest_kernel(double log_I_x, double log_J_x) {
  const double p_me1 = 1.0 / (1.0 + std::exp(log_I_x - log_J_x));
  return {p_me1, 1.0 - p_me1};
}

SemiInfinitePathPrefix sample_forward_polymer_path(const BusemannField& field, Point x,
                                                  int end_row, RngStream& stream) {
  if (field.model != ModelKind::Polymer) {
    throw DimensionError("sample_forward_polymer_path: polymer field required");
  }
  SemiInfinitePathPrefix prefix;
  prefix.start = x;
  prefix.direction = PathDirection::NorthEast;
  Point z = x;
  require_covered(field, z, "sample_forward_polymer_path");
  prefix.path.vertices.push_back(z);
  while (z.y < end_row) {
    require_covered(field, z + kE1, "sample_forward_polymer_path");
    require_covered(field, z + kE2, "sample_forward_polymer_path");
    // pi(z,z+e1) = e^{-phi(z+e1)} / (e^{-phi(z+e1)} + e^{-phi(z+e2)}),
    // identical to J_{z+e2}/(I_{z+e1}+J_{z+e2}).
    const double p_e1 = 1.0 / (1.0 + std::exp(field.phi_at(z + kE1) - field.phi_at(z + kE2)));
    z = stream.next_unit() < p_e1 ? z + kE1 : z + kE2;
    prefix.path.vertices.push_back(z);
  }
  return prefix;
}

SemiInfinitePathPrefix sample_southwest_polymer_path(const BusemannField& field, Point x,
                                                    int end_row, RngStream& stream) {
  if (field.model != ModelKind::Polymer) {
    throw DimensionError("sample_southwest_polymer_path: polymer field required");
  }
  SemiInfinitePathPrefix prefix;
  prefix.start = x;
  prefix.direction = PathDirection::SouthWest;
  Point z = x;
  require_covered(field, z, "sample_southwest_polymer_path");
  prefix.path.vertices.push_back(z);
  while (z.y > end_row) {
    require_covered(field, z - kE1, "sample_southwest_polymer_path");
    require_covered(field, z - kE2, "sample_southwest_polymer_path");
    const double p_me1 = 1.0 / (1.0 + std::exp(field.phi_at(z - kE2) - field.phi_at(z - kE1)));
    z = stream.next_unit() < p_me1 ? z - kE1 : z - kE2;
    prefix.path.vertices.push_back(z);
  }
  return prefix;
}

namespace {

std::uint64_t edge_key(Point lo, bool horizontal) {
  const auto ux = static_cast<std::uint64_t>(static_cast<std::uint32_t>(lo.x));
  const auto uy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(lo.y));
  return (ux << 33) | (uy << 1) | (horizontal ? 1u : 0u);
}

}  // namespace

DisjointnessReport check_primal_dual_disjoint(const SemiInfinitePathPrefix& primal,
                                              const SemiInfinitePathPrefix& dual) {
  std::unordered_set<std::uint64_t> dual_edges;
  const auto& dv = dual.path.vertices;
  for (std::size_t k = 0; k + 1 < dv.size(); ++k) {
    const Point a = dv[k];
    const Point b = dv[k + 1];
    const Point lo{std::min(a.x, b.x), std::min(a.y, b.y)};
    dual_edges.insert(edge_key(lo, a.y == b.y));
  }
  DisjointnessReport report;
  const auto& pv = primal.path.vertices;
  for (std::size_t k = 0; k + 1 < pv.size(); ++k) {
    const Point a = pv[k];
    const Point b = pv[k + 1];
    // After shifting the dual path by (-1/2,-1/2), a primal horizontal edge
    // (x,y)-(x+1,y) can only be crossed by the dual vertical edge
    // {(x+1,y),(x+1,y+1)}, and a primal vertical edge (x,y)-(x,y+1) only by
    // the dual horizontal edge {(x,y+1),(x+1,y+1)}.
    if (a.y == b.y) {
      const int x = std::min(a.x, b.x);
      if (dual_edges.count(edge_key({x + 1, a.y}, false))) {
        report.disjoint = false;
        report.primal_edge = {Point{x, a.y}, Point{x + 1, a.y}};
        report.dual_edge = {Point{x + 1, a.y}, Point{x + 1, a.y + 1}};
        return report;
      }
    } else {
      const int y = std::min(a.y, b.y);
      if (dual_edges.count(edge_key({a.x, y + 1}, true))) {
        report.disjoint = false;
        report.primal_edge = {Point{a.x, y}, Point{a.x, y + 1}};
        report.dual_edge = {Point{a.x, y + 1}, Point{a.x + 1, y + 1}};
        return report;
      }
    }
  }
  return report;
}

}  // namespace lppsim
