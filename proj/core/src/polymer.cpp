#include "lppsim/polymer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lppsim/special_functions.hpp"

namespace lppsim {

double logsumexp2(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  const double d = hi - lo;
  // exp(-d) underflows the double sum beyond ~36 digits; cut at 40.
  if (d > 40.0) return hi;
  return hi + std::log1p(std::exp(-d));
}

namespace {

int env_right(const Environment& env) { return env.origin_offset.x + env.width - 1; }
int env_top(const Environment& env) { return env.origin_offset.y + env.height - 1; }

void require_inside(const Environment& env, Point p, const char* who) {
  if (!env.contains(p)) {
    throw DimensionError(std::string(who) + ": point (" + std::to_string(p.x) + "," +
                         std::to_string(p.y) + ") outside environment");
  }
}

}  // namespace

LogPartitionField bulk_log_partition(const Environment& env, Point src) {
  require_inside(env, src, "bulk_log_partition");
  LogPartitionField field;
  field.source = src;
  field.origin = src;
  field.width = env_right(env) - src.x + 1;
  field.height = env_top(env) - src.y + 1;
  field.values.resize(static_cast<std::size_t>(field.width) * field.height);
  for (int j = 0; j < field.height; ++j) {
    for (int i = 0; i < field.width; ++i) {
      const Point z{src.x + i, src.y + j};
      double acc = 0.0;
      if (i > 0 && j > 0) {
        acc = logsumexp2(field.at(z - kE1), field.at(z - kE2));
      } else if (i > 0) {
        acc = field.at(z - kE1);
      } else if (j > 0) {
        acc = field.at(z - kE2);
      }
      field.at_mut(z) = acc + std::log(env.at(z));
    }
  }
  return field;
}

std::vector<double> bulk_log_partition_row(const Environment& env, Point src, int row,
                                           int x_hi) {
  require_inside(env, src, "bulk_log_partition_row");
  require_inside(env, {x_hi, row}, "bulk_log_partition_row");
  if (row < src.y || x_hi < src.x) {
    throw DimensionError("bulk_log_partition_row: target row/column southwest of source");
  }
  const int width = x_hi - src.x + 1;
  std::vector<double> g(width);
  for (int y = src.y; y <= row; ++y) {
    for (int i = 0; i < width; ++i) {
      double acc = 0.0;
      if (i > 0 && y > src.y) {
        acc = logsumexp2(g[i - 1], g[i]);
      } else if (i > 0) {
        acc = g[i - 1];
      } else if (y > src.y) {
        acc = g[0];
      }
      g[i] = acc + std::log(env.at({src.x + i, y}));
    }
  }
  return g;
}

std::vector<double> bulk_log_partition_row_reverse(const Environment& env, Point dst, int row,
                                                   int x_lo) {
  require_inside(env, dst, "bulk_log_partition_row_reverse");
  require_inside(env, {x_lo, row}, "bulk_log_partition_row_reverse");
  if (row > dst.y || x_lo > dst.x) {
    throw DimensionError("bulk_log_partition_row_reverse: target northeast of dst");
  }
  const int width = dst.x - x_lo + 1;
  std::vector<double> g(width);
  for (int y = dst.y; y >= row; --y) {
    for (int i = width - 1; i >= 0; --i) {
      double acc = 0.0;
      const bool has_east = i + 1 < width;
      const bool has_north = y < dst.y;
      if (has_east && has_north) {
        acc = logsumexp2(g[i + 1], g[i]);
      } else if (has_east) {
        acc = g[i + 1];
      } else if (has_north) {
        acc = g[i];
      }
      g[i] = acc + std::log(env.at({x_lo + i, y}));
    }
  }
  return g;
}

QuenchedSampler make_quenched_sampler(const Environment& env, Point src, Point dst) {
  if (dst.x < src.x || dst.y < src.y) {
    throw DimensionError("make_quenched_sampler: dst not coordinatewise >= src");
  }
  require_inside(env, src, "make_quenched_sampler");
  require_inside(env, dst, "make_quenched_sampler");
  QuenchedSampler sampler;
  sampler.src = src;
  sampler.dst = dst;
  LogPartitionField& f = sampler.reverse_field;
  f.source = dst;
  f.origin = src;
  f.width = dst.x - src.x + 1;
  f.height = dst.y - src.y + 1;
  f.reversed = true;
  f.values.resize(static_cast<std::size_t>(f.width) * f.height);
  for (int j = f.height - 1; j >= 0; --j) {
    for (int i = f.width - 1; i >= 0; --i) {
      const Point z{src.x + i, src.y + j};
      double acc = 0.0;
      const bool has_east = i + 1 < f.width;
      const bool has_north = j + 1 < f.height;
      if (has_east && has_north) {
        acc = logsumexp2(f.at(z + kE1), f.at(z + kE2));
      } else if (has_east) {
        acc = f.at(z + kE1);
      } else if (has_north) {
        acc = f.at(z + kE2);
      }
      f.at_mut(z) = acc + std::log(env.at(z));
    }
  }
  return sampler;
}

LatticePath quenched_sample_path(const QuenchedSampler& sampler, RngStream& stream) {
  const LogPartitionField& f = sampler.reverse_field;
  LatticePath path;
  Point z = sampler.src;
  path.vertices.push_back(z);
  while (z != sampler.dst) {
    Point next;
    if (z.x == sampler.dst.x) {
      next = z + kE2;
    } else if (z.y == sampler.dst.y) {
      next = z + kE1;
    } else {
      // P(e1 step) = Z_{z+e1,dst} / (Z_{z+e1,dst} + Z_{z+e2,dst}).
      const double l1 = f.at(z + kE1);
      const double l2 = f.at(z + kE2);
      const double p_e1 = 1.0 / (1.0 + std::exp(l2 - l1));
      next = stream.next_unit() < p_e1 ? z + kE1 : z + kE2;
    }
    z = next;
    path.vertices.push_back(z);
  }
  return path;
}

RowEntryDistribution quenched_row_entry_distribution(const Environment& env, Point src,
                                                    Point dst, int r) {
  if (!(src.y < r && r <= dst.y)) {
    throw DimensionError("quenched_row_entry_distribution: row outside (src.y, dst.y]");
  }
  // First entry to row r at column j means visiting (j,r-1) then (j,r); the
  // mass splits exactly into forward free energy to (j,r-1) and reversed
  // free energy from (j,r) (the latter already carries w_{(j,r)}).
  const auto fwd = bulk_log_partition_row(env, src, r - 1, dst.x);
  const auto rev = bulk_log_partition_row_reverse(env, dst, r, src.x);
  RowEntryDistribution out;
  out.first_column = src.x;
  const int width = dst.x - src.x + 1;
  std::vector<double> logmass(width);
  double total = fwd[0] + rev[0];
  logmass[0] = total;
  for (int i = 1; i < width; ++i) {
    logmass[i] = fwd[i] + rev[i];
    total = logsumexp2(total, logmass[i]);
  }
  out.log_total = total;
  out.mass.resize(width);
  for (int i = 0; i < width; ++i) out.mass[i] = std::exp(logmass[i] - total);
  return out;
}

double quenched_crossing_probability(const Environment& env, Point src, Point dst, int r,
                                     int c) {
  if (c <= src.x) return 1.0;
  if (c > dst.x) return 0.0;
  const auto dist = quenched_row_entry_distribution(env, src, dst, r);
  double p = 0.0;
  for (int j = c; j <= dst.x; ++j) p += dist.mass[j - dist.first_column];
  return std::min(p, 1.0);
}

double StationaryPolymerSpec::log_boundary_profile(int i) const {
  const int lo = std::min(i, source_column);
  const int hi = std::max(i, source_column);
  double sum = 0.0;
  for (int j = lo + 1; j <= hi; ++j) {
    const int idx = j - weights_first;
    if (idx < 0 || idx >= static_cast<int>(log_boundary_weights.size())) {
      throw CoverageError("log_boundary_profile: weights do not cover edge into column " +
                          std::to_string(j));
    }
    sum += log_boundary_weights[idx];
  }
  return i >= source_column ? sum : -sum;
}

void StationaryPolymerSpec::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ParameterRangeError("StationaryPolymerSpec: rho must be in (0,1)");
  }
  if (win_lo > win_hi) {
    throw DimensionError("StationaryPolymerSpec: empty window");
  }
}

StationaryPolymerResult stationary_log_partition(const Environment& env,
                                                 const StationaryPolymerSpec& spec, Point dst) {
  spec.validate();
  if (spec.side == BoundarySide::South && dst.y == spec.boundary_row) {
    return {spec.log_boundary_profile(dst.x), dst.x, {1.0}};
  }
  StationaryPolymerResult out;
  std::vector<double> log_entry;
  bool truncated_left = true;
  if (spec.side == BoundarySide::South) {
    if (dst.y <= spec.boundary_row) {
      throw DimensionError("stationary_log_partition: dst not above a south boundary");
    }
    const int hi = std::min(spec.win_hi, dst.x);
    if (hi < spec.win_lo) {
      throw DimensionError("stationary_log_partition: window entirely right of dst");
    }
    const auto b = bulk_log_partition_row_reverse(env, dst, spec.boundary_row + 1, spec.win_lo);
    out.first_column = spec.win_lo;
    log_entry.resize(hi - spec.win_lo + 1);
    for (int i = spec.win_lo; i <= hi; ++i) {
      log_entry[i - spec.win_lo] = spec.log_boundary_profile(i) + b[i - spec.win_lo];
    }
  } else {
    if (dst.y >= spec.boundary_row) {
      throw DimensionError("stationary_log_partition: dst not below a north boundary");
    }
    const int lo = std::max(spec.win_lo, dst.x);
    if (lo > spec.win_hi) {
      throw DimensionError("stationary_log_partition: window entirely left of dst");
    }
    const auto f = bulk_log_partition_row(env, dst, spec.boundary_row - 1, spec.win_hi);
    out.first_column = lo;
    log_entry.resize(spec.win_hi - lo + 1);
    for (int i = lo; i <= spec.win_hi; ++i) {
      log_entry[i - lo] = f[i - dst.x] - spec.log_boundary_profile(i);
    }
    truncated_left = false;
  }
  double total = log_entry[0];
  for (std::size_t k = 1; k < log_entry.size(); ++k) total = logsumexp2(total, log_entry[k]);
  out.log_value = total;
  out.exit_mass.resize(log_entry.size());
  for (std::size_t k = 0; k < log_entry.size(); ++k) {
    out.exit_mass[k] = std::exp(log_entry[k] - total);
  }
  const double edge_mass = truncated_left ? out.exit_mass.front() : out.exit_mass.back();
  const bool edge_is_truncated =
      truncated_left ? out.first_column == spec.win_lo
                     : out.first_column + static_cast<int>(out.exit_mass.size()) - 1 ==
                           spec.win_hi;
  if (edge_is_truncated && edge_mass > 1e-9) {
    const int edge_col = truncated_left
                             ? out.first_column
                             : out.first_column + static_cast<int>(out.exit_mass.size()) - 1;
    throw WindowTooSmallError("stationary_log_partition: mass " + std::to_string(edge_mass) +
                                  " on the truncated window edge",
                              edge_col);
  }
  return out;
}

LogPartitionField stationary_log_field(const Environment& env,
                                       const StationaryPolymerSpec& spec, int y_max) {
  spec.validate();
  if (spec.side != BoundarySide::South) {
    throw DimensionError("stationary_log_field: only south-side fields are materialized");
  }
  if (y_max < spec.boundary_row) {
    throw DimensionError("stationary_log_field: y_max below boundary row");
  }
  LogPartitionField field;
  field.source = {spec.source_column, spec.boundary_row};
  field.origin = {spec.win_lo, spec.boundary_row};
  field.width = spec.win_hi - spec.win_lo + 1;
  field.height = y_max - spec.boundary_row + 1;
  field.values.resize(static_cast<std::size_t>(field.width) * field.height);
  for (int i = spec.win_lo; i <= spec.win_hi; ++i) {
    field.at_mut({i, spec.boundary_row}) = spec.log_boundary_profile(i);
  }
  for (int y = spec.boundary_row + 1; y <= y_max; ++y) {
    for (int i = spec.win_lo; i <= spec.win_hi; ++i) {
      const Point z{i, y};
      double acc = field.at(z - kE2);
      if (i > spec.win_lo) acc = logsumexp2(acc, field.at(z - kE1));
      field.at_mut(z) = acc + std::log(env.at(z));
    }
  }
  return field;
}

std::pair<double, double> characteristic_direction_polymer(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ParameterRangeError("characteristic_direction_polymer: rho must be in (0,1)");
  }
  return {trigamma(1.0 - rho), trigamma(rho)};
}

double expected_stationary_logZ(double rho, int m, int n) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ParameterRangeError("expected_stationary_logZ: rho must be in (0,1)");
  }
  return -m * digamma(rho) - n * digamma(1.0 - rho);
}

}  // namespace lppsim
