#pragma once

#include <vector>

#include "lppsim/environment.hpp"
#include "lppsim/lattice.hpp"
#include "lppsim/lpp.hpp"
#include "lppsim/rng.hpp"

namespace lppsim {

/// log(e^a + e^b) without overflow; exact double result when |a-b| > 40.
double logsumexp2(double a, double b);

/// Log partition values log Z(z) over a rectangle. Same layout as
/// PassageField; recursion log Z(z) = log w(z) + logsumexp(west, south).
struct LogPartitionField {
  Point source;  // or dst, for reversed fields
  Point origin;
  int width{0};
  int height{0};
  bool reversed{false};  // true when values are log Z_{z,source}
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

/// Full table of log Z_{src,z} for z northeast of src within env.
LogPartitionField bulk_log_partition(const Environment& env, Point src);

/// log Z_{src,(j,row)} for j in [src.x, x_hi], rolling row.
std::vector<double> bulk_log_partition_row(const Environment& env, Point src, int row, int x_hi);

/// log Z_{(j,row),dst} for j in [x_lo, dst.x], reversed rolling row.
std::vector<double> bulk_log_partition_row_reverse(const Environment& env, Point dst, int row,
                                                   int x_lo);

/// Exact sampler for the quenched measure Q_{src,dst}: holds the reversed
/// field log Z_{z,dst}, from which forward transition probabilities
/// Z_{z+e1,dst}/(Z_{z+e1,dst}+Z_{z+e2,dst}) follow.
struct QuenchedSampler {
  Point src;
  Point dst;
  LogPartitionField reverse_field;
};

QuenchedSampler make_quenched_sampler(const Environment& env, Point src, Point dst);

LatticePath quenched_sample_path(const QuenchedSampler& sampler, RngStream& stream);

/// Per-column quenched mass of the first entry to row r: mass[j - src.x] =
/// Q_{src,dst}{ path visits (j,r-1) then (j,r) }. Masses sum to 1.
struct RowEntryDistribution {
  int first_column{0};
  std::vector<double> mass;
  double log_total{0.0};  // log Z_{src,dst}
};

RowEntryDistribution quenched_row_entry_distribution(const Environment& env, Point src,
                                                    Point dst, int r);

/// Exact quenched probability that the path's first vertex in row r has
/// e1-coordinate >= c.
double quenched_crossing_probability(const Environment& env, Point src, Point dst, int r, int c);

/// Increment-stationary polymer boundary on a horizontal line; the boundary
/// profile is multiplicative, stored in logs: log h_i is the signed partial
/// sum of log Y_j between source_column and i (log h_{source_column} = 0).
/// Side conventions match StationaryBoundarySpec.
struct StationaryPolymerSpec {
  double rho{0.5};
  BoundarySide side{BoundarySide::South};
  int boundary_row{0};
  int source_column{0};
  int win_lo{0};
  int win_hi{0};
  std::vector<double> log_boundary_weights;  // log Y_j for j = weights_first, ...
  int weights_first{0};

  double log_boundary_profile(int i) const;
  void validate() const;
};

/// Stationary free energy plus the quenched distribution of the boundary
/// entry column over the window. Raises WindowTooSmallError when the mass at
/// the truncated window edge exceeds 1e-9.
struct StationaryPolymerResult {
  double log_value{0.0};
  int first_column{0};
  std::vector<double> exit_mass;
};

StationaryPolymerResult stationary_log_partition(const Environment& env,
                                                 const StationaryPolymerSpec& spec, Point dst);

/// South-side stationary free-energy table, analogous to stationary_field.
LogPartitionField stationary_log_field(const Environment& env, const StationaryPolymerSpec& spec,
                                       int y_max);

/// Characteristic direction (trigamma(1-rho), trigamma(rho)).
std::pair<double, double> characteristic_direction_polymer(double rho);

/// -m*digamma(rho) - n*digamma(1-rho).
double expected_stationary_logZ(double rho, int m, int n);

}  // namespace lppsim
