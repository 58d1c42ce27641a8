#pragma once

#include <vector>

#include "lppsim/environment.hpp"
#include "lppsim/lattice.hpp"

namespace lppsim {

/// Last-passage values G(z) over a rectangle, from a fixed source point.
/// values[0] corresponds to lattice point `origin`; row-major.
struct PassageField {
  Point source;
  Point origin;
  int width{0};
  int height{0};
  std::vector<double> values;

  bool contains(Point p) const {
    const int i = p.x - origin.x;
    const int j = p.y - origin.y;
    return i >= 0 && i < width && j >= 0 && j < height;
  }
  double at(Point p) const {
    return values[static_cast<std::size_t>(p.y - origin.y) * width + (p.x - origin.x)];
  }
  double& at_mut(Point p) {
    return values[static_cast<std::size_t>(p.y - origin.y) * width + (p.x - origin.x)];
  }
};

/// Full DP table G_{src,z} = w(z) + max(G(z-e1), G(z-e2)) for every z in the
/// environment northeast of src.
PassageField bulk_passage_field(const Environment& env, Point src);

/// G_{src,(j,row)} for j in [src.x, x_hi], computed with a rolling row
/// (O(width) memory). Result index 0 corresponds to column src.x.
std::vector<double> bulk_passage_row(const Environment& env, Point src, int row, int x_hi);

/// G_{(j,row),dst} for j in [x_lo, dst.x], by the reversed recursion from dst.
/// Result index 0 corresponds to column x_lo.
std::vector<double> bulk_passage_row_reverse(const Environment& env, Point dst, int row,
                                             int x_lo);

/// Argmax path from field.source to dst. At a tied predecessor comparison the
/// -e2 predecessor is chosen (ties have probability zero for continuous
/// weights; the rule makes synthetic inputs reproducible).
LatticePath geodesic_backtrack(const PassageField& field, const Environment& env, Point dst);

/// First vertex of the path on the horizontal line y = r (the minimum-l1
/// point of the intersection, since the path is up-right).
Point crossing_point_min(const LatticePath& path, int r);

enum class BoundarySide { South, North };

/// Increment-stationary boundary on a horizontal line.
///
/// Boundary weights Y_j (Exp(rho) for LPP) are edge increments: the boundary
/// profile is h_i = sum of Y_j for source_column < j <= i, with h negative of
/// the reversed sum for i < source_column, so h_{source_column} = 0.
///
/// South: bulk lies above boundary_row; the path starts at
/// (source_column, boundary_row), runs along the boundary to an entry column
/// i in [win_lo, win_hi], then through the bulk to dst. Only win_lo
/// truncates (entry columns never exceed dst.x).
///
/// North: bulk lies below boundary_row; the path starts at dst (below the
/// row), runs through the bulk, and enters the boundary at column i, ending
/// at (source_column, boundary_row); the boundary contributes -h_i. Only
/// win_hi truncates.
struct StationaryBoundarySpec {
  double rho{0.5};
  BoundarySide side{BoundarySide::South};
  int boundary_row{0};
  int source_column{0};
  int win_lo{0};
  int win_hi{0};
  std::vector<double> boundary_weights;  // Y_j for j = weights_first, weights_first+1, ...
  int weights_first{0};

  /// h_i relative to h_{source_column} = 0; i must be covered by the weights.
  double boundary_profile(int i) const;
  void validate() const;
};

struct ExitRecord {
  int exit_index{0};
  double value{0.0};
  bool argmax_unique{true};
};

/// Entry-value decomposition of the stationary passage: for each candidate
/// entry column i in [win_lo, win_hi], the best value among paths entering
/// the bulk at column i. The unrestricted value is the max over all columns.
struct StationaryEntryValues {
  int first_column{0};
  std::vector<double> values;
};

StationaryEntryValues stationary_entry_values(const Environment& env,
                                              const StationaryBoundarySpec& spec, Point dst);

/// Stationary passage value and exit column. Ties in the argmax resolve to
/// the largest column, matching the -e2 backtracking preference. Raises
/// WindowTooSmallError when the argmax sits on the truncated window edge.
ExitRecord stationary_passage(const Environment& env, const StationaryBoundarySpec& spec,
                              Point dst);

/// Same maximum restricted to entry columns in [a, b].
double restricted_stationary_passage(const Environment& env, const StationaryBoundarySpec& spec,
                                     Point dst, int a, int b);

/// South-side stationary DP table over columns [win_lo, win_hi] and rows
/// [boundary_row, y_max]: row boundary_row holds the profile h, above it the
/// bulk recursion (the window's left column has no west predecessor). Entry
/// (k, y) is G^rho from (source_column, boundary_row) to (k, y) with
/// left-truncated boundary.
PassageField stationary_field(const Environment& env, const StationaryBoundarySpec& spec,
                              int y_max);

/// Characteristic direction (rho^2, (1-rho)^2).
std::pair<double, double> characteristic_direction_lpp(double rho);

/// m/rho + n/(1-rho).
double expected_stationary_G(double rho, int m, int n);

/// e1-coordinate where the ray from (n,n) in direction -xi[rho] meets the
/// e1-axis: n - n rho^2/(1-rho)^2.
double exit_e1_intersection(double rho, int n);

}  // namespace lppsim
