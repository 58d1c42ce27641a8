#include "lppsim/lpp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lppsim {

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

PassageField bulk_passage_field(const Environment& env, Point src) {
  require_inside(env, src, "bulk_passage_field");
  PassageField field;
  field.source = src;
  field.origin = src;
  field.width = env_right(env) - src.x + 1;
  field.height = env_top(env) - src.y + 1;
  field.values.resize(static_cast<std::size_t>(field.width) * field.height);
  for (int j = 0; j < field.height; ++j) {
    for (int i = 0; i < field.width; ++i) {
      const Point z{src.x + i, src.y + j};
      double best = 0.0;
      if (i > 0 && j > 0) {
        best = std::max(field.at(z - kE1), field.at(z - kE2));
      } else if (i > 0) {
        best = field.at(z - kE1);
      } else if (j > 0) {
        best = field.at(z - kE2);
      }
      field.at_mut(z) = best + env.at(z);
    }
  }
  return field;
}

std::vector<double> bulk_passage_row(const Environment& env, Point src, int row, int x_hi) {
  require_inside(env, src, "bulk_passage_row");
  require_inside(env, {x_hi, row}, "bulk_passage_row");
  if (row < src.y || x_hi < src.x) {
    throw DimensionError("bulk_passage_row: target row/column southwest of source");
  }
  const int width = x_hi - src.x + 1;
  std::vector<double> g(width);
  for (int y = src.y; y <= row; ++y) {
    for (int i = 0; i < width; ++i) {
      double best = 0.0;
      if (i > 0 && y > src.y) {
        best = std::max(g[i - 1], g[i]);
      } else if (i > 0) {
        best = g[i - 1];
      } else if (y > src.y) {
        best = g[0];
      }
      g[i] = best + env.at({src.x + i, y});
    }
  }
  return g;
}

std::vector<double> bulk_passage_row_reverse(const Environment& env, Point dst, int row,
                                             int x_lo) {
  require_inside(env, dst, "bulk_passage_row_reverse");
  require_inside(env, {x_lo, row}, "bulk_passage_row_reverse");
  if (row > dst.y || x_lo > dst.x) {
    throw DimensionError("bulk_passage_row_reverse: target row/column northeast of dst");
  }
  const int width = dst.x - x_lo + 1;
  std::vector<double> g(width);
  for (int y = dst.y; y >= row; --y) {
    for (int i = width - 1; i >= 0; --i) {
      double best = 0.0;
      const bool has_east = i + 1 < width;
      const bool has_north = y < dst.y;
      if (has_east && has_north) {
        best = std::max(g[i + 1], g[i]);
      } else if (has_east) {
        best = g[i + 1];
      } else if (has_north) {
        best = g[i];
      }
      g[i] = best + env.at({x_lo + i, y});
    }
  }
  return g;
}

LatticePath geodesic_backtrack(const PassageField& field, const Environment& env, Point dst) {
  const Point src = field.source;
  if (dst.x < src.x || dst.y < src.y) {
    throw DimensionError("geodesic_backtrack: dst not coordinatewise >= source");
  }
  if (!field.contains(dst)) {
    throw DimensionError("geodesic_backtrack: dst outside field");
  }
  LatticePath path;
  Point z = dst;
  path.vertices.push_back(z);
  while (z != src) {
    Point prev;
    if (z.x == src.x) {
      prev = z - kE2;
    } else if (z.y == src.y) {
      prev = z - kE1;
    } else {
      // Tie resolves to the -e2 predecessor.
      prev = field.at(z - kE1) > field.at(z - kE2) ? z - kE1 : z - kE2;
    }
    z = prev;
    path.vertices.push_back(z);
  }
  std::reverse(path.vertices.begin(), path.vertices.end());
  (void)env;
  return path;
}

Point crossing_point_min(const LatticePath& path, int r) {
  for (Point v : path.vertices) {
    if (v.y == r) return v;
  }
  throw DimensionError("crossing_point_min: path does not reach row " + std::to_string(r));
}

double StationaryBoundarySpec::boundary_profile(int i) const {
  const int lo = std::min(i, source_column);
  const int hi = std::max(i, source_column);
  // Y_j covers the edge (j-1,row)->(j,row); we need j in (lo, hi].
  double sum = 0.0;
  for (int j = lo + 1; j <= hi; ++j) {
    const int idx = j - weights_first;
    if (idx < 0 || idx >= static_cast<int>(boundary_weights.size())) {
      throw CoverageError("boundary_profile: weights do not cover edge into column " +
                          std::to_string(j));
    }
    sum += boundary_weights[idx];
  }
  return i >= source_column ? sum : -sum;
}

void StationaryBoundarySpec::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ParameterRangeError("StationaryBoundarySpec: rho must be in (0,1)");
  }
  if (win_lo > win_hi) {
    throw DimensionError("StationaryBoundarySpec: empty window");
  }
}

StationaryEntryValues stationary_entry_values(const Environment& env,
                                              const StationaryBoundarySpec& spec, Point dst) {
  spec.validate();
  StationaryEntryValues entry;
  if (spec.side == BoundarySide::South) {
    if (dst.y <= spec.boundary_row) {
      throw DimensionError("stationary_entry_values: dst not above a south boundary");
    }
    const int hi = std::min(spec.win_hi, dst.x);
    if (hi < spec.win_lo) {
      throw DimensionError("stationary_entry_values: window entirely right of dst");
    }
    const auto b = bulk_passage_row_reverse(env, dst, spec.boundary_row + 1, spec.win_lo);
    entry.first_column = spec.win_lo;
    entry.values.resize(hi - spec.win_lo + 1);
    for (int i = spec.win_lo; i <= hi; ++i) {
      entry.values[i - spec.win_lo] = spec.boundary_profile(i) + b[i - spec.win_lo];
    }
  } else {
    if (dst.y >= spec.boundary_row) {
      throw DimensionError("stationary_entry_values: dst not below a north boundary");
    }
    const int lo = std::max(spec.win_lo, dst.x);
    if (lo > spec.win_hi) {
      throw DimensionError("stationary_entry_values: window entirely left of dst");
    }
    const auto f = bulk_passage_row(env, dst, spec.boundary_row - 1, spec.win_hi);
    entry.first_column = lo;
    entry.values.resize(spec.win_hi - lo + 1);
    for (int i = lo; i <= spec.win_hi; ++i) {
      entry.values[i - lo] = f[i - dst.x] - spec.boundary_profile(i);
    }
  }
  return entry;
}

namespace {

ExitRecord exit_from_entries(const StationaryEntryValues& entry) {
  ExitRecord rec;
  double best = entry.values[0];
  int arg = entry.first_column;
  bool unique = true;
  for (std::size_t k = 1; k < entry.values.size(); ++k) {
    const double v = entry.values[k];
    if (v > best) {
      best = v;
      arg = entry.first_column + static_cast<int>(k);
      unique = true;
    } else if (v == best) {
      // Tie: keep the largest column, matching the -e2 backtracking rule.
      arg = entry.first_column + static_cast<int>(k);
      unique = false;
    }
  }
  rec.value = best;
  rec.exit_index = arg;
  rec.argmax_unique = unique;
  return rec;
}

}  // namespace

ExitRecord stationary_passage(const Environment& env, const StationaryBoundarySpec& spec,
                              Point dst) {
  spec.validate();
  if (spec.side == BoundarySide::South && dst.y == spec.boundary_row) {
    // Pure boundary target: the value is the profile itself.
    return {dst.x, spec.boundary_profile(dst.x), true};
  }
  const auto entry = stationary_entry_values(env, spec, dst);
  ExitRecord rec = exit_from_entries(entry);
  const int last_column = entry.first_column + static_cast<int>(entry.values.size()) - 1;
  if (spec.side == BoundarySide::South && rec.exit_index == spec.win_lo) {
    throw WindowTooSmallError("stationary_passage: argmax on the truncated (left) window edge",
                              rec.exit_index);
  }
  if (spec.side == BoundarySide::North && rec.exit_index == spec.win_hi &&
      rec.exit_index == last_column) {
    throw WindowTooSmallError("stationary_passage: argmax on the truncated (right) window edge",
                              rec.exit_index);
  }
  return rec;
}

double restricted_stationary_passage(const Environment& env, const StationaryBoundarySpec& spec,
                                     Point dst, int a, int b) {
  if (a > b) throw DimensionError("restricted_stationary_passage: empty interval");
  const auto entry = stationary_entry_values(env, spec, dst);
  const int last_column = entry.first_column + static_cast<int>(entry.values.size()) - 1;
  const int lo = std::max(a, entry.first_column);
  const int hi = std::min(b, last_column);
  if (lo > hi) {
    throw DimensionError("restricted_stationary_passage: interval misses the window");
  }
  double best = entry.values[lo - entry.first_column];
  for (int i = lo + 1; i <= hi; ++i) {
    best = std::max(best, entry.values[i - entry.first_column]);
  }
  return best;
}

PassageField stationary_field(const Environment& env, const StationaryBoundarySpec& spec,
                              int y_max) {
  spec.validate();
  if (spec.side != BoundarySide::South) {
    throw DimensionError("stationary_field: only south-side fields are materialized");
  }
  if (y_max < spec.boundary_row) {
    throw DimensionError("stationary_field: y_max below boundary row");
  }
  PassageField field;
  field.source = {spec.source_column, spec.boundary_row};
  field.origin = {spec.win_lo, spec.boundary_row};
  field.width = spec.win_hi - spec.win_lo + 1;
  field.height = y_max - spec.boundary_row + 1;
  field.values.resize(static_cast<std::size_t>(field.width) * field.height);
  for (int i = spec.win_lo; i <= spec.win_hi; ++i) {
    field.at_mut({i, spec.boundary_row}) = spec.boundary_profile(i);
  }
  for (int y = spec.boundary_row + 1; y <= y_max; ++y) {
    for (int i = spec.win_lo; i <= spec.win_hi; ++i) {
      const Point z{i, y};
      double best = field.at(z - kE2);
      if (i > spec.win_lo) best = std::max(best, field.at(z - kE1));
      field.at_mut(z) = best + env.at(z);
    }
  }
  return field;
}

std::pair<double, double> characteristic_direction_lpp(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ParameterRangeError("characteristic_direction_lpp: rho must be in (0,1)");
  }
  return {rho * rho, (1.0 - rho) * (1.0 - rho)};
}

double expected_stationary_G(double rho, int m, int n) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ParameterRangeError("expected_stationary_G: rho must be in (0,1)");
  }
  return m / rho + n / (1.0 - rho);
}

double exit_e1_intersection(double rho, int n) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ParameterRangeError("exit_e1_intersection: rho must be in (0,1)");
  }
  const double q = rho / (1.0 - rho);
  return n - n * q * q;
}

}  // namespace lppsim
