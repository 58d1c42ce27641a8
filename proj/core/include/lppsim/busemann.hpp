#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lppsim/environment.hpp"
#include "lppsim/lattice.hpp"
#include "lppsim/rng.hpp"

namespace lppsim {

enum class ModelKind { LPP, Polymer };

enum class BusemannProvenance { FiniteApproximation, ExactStationaryRow };

/// Busemann data stored as a single potential phi on a rectangle, so that
/// B_{x,y} = phi(y) - phi(x) holds exactly (the cocycle property is
/// automatic). For the polymer the potential is log-scale: log I_z =
/// phi(z) - phi(z - e1).
struct BusemannField {
  ModelKind model{ModelKind::LPP};
  double rho{0.5};
  BusemannProvenance provenance{BusemannProvenance::ExactStationaryRow};
  int boundary_row{0};  // meaningful for ExactStationaryRow
  Point origin;
  int width{0};
  int height{0};
  std::vector<double> phi;

  bool contains(Point p) const {
    const int i = p.x - origin.x;
    const int j = p.y - origin.y;
    return i >= 0 && i < width && j >= 0 && j < height;
  }
  double phi_at(Point p) const {
    return phi[static_cast<std::size_t>(p.y - origin.y) * width + (p.x - origin.x)];
  }
  double& phi_mut(Point p) {
    return phi[static_cast<std::size_t>(p.y - origin.y) * width + (p.x - origin.x)];
  }
  /// B_{x,y} (LPP) or log of the multiplicative increment (polymer).
  double B(Point x, Point y) const { return phi_at(y) - phi_at(x); }
  /// Horizontal increment into z: B_{z-e1,z}.
  double I_incr(Point z) const { return phi_at(z) - phi_at(z - kE1); }
  /// Vertical increment into z: B_{z-e2,z}.
  double J_incr(Point z) const { return phi_at(z) - phi_at(z - kE2); }
};

/// Scalar dual weight from the two incoming increments: min(B1,B2) for LPP,
/// 1/(e^{-B1}+e^{-B2}) for the polymer.
double dual_weight(ModelKind model, double b1, double b2);

/// Geometry of an exact coupled construction: a stationary boundary row of
/// Busemann increments, primal bulk weights on rows_below rows under it, and
/// independent dual bulk weights on rows_above rows over it.
struct CoupledPairSpec {
  ModelKind model{ModelKind::LPP};
  double rho{0.5};
  int col_lo{0};
  int col_hi{0};
  int boundary_row{0};
  int rows_below{0};
  int rows_above{0};
};

struct CoupledPair {
  BusemannField field;
  Environment primal_env;  // rows [boundary_row - rows_below, boundary_row - 1]
  Environment dual_env;    // rows [boundary_row + 1, boundary_row + rows_above]
  /// I_j (LPP) or log I_j (polymer) for the edge into column j;
  /// boundary_increments[0] is the edge into column col_lo + 1.
  std::vector<double> boundary_increments;
};

/// Draws the boundary row from its stationary marginal (Exp(rho) or
/// Ga^{-1}(rho)) plus independent primal/dual bulk environments, and extends
/// the potential across both bulk regions:
///   above: phi(z) =  w'(z) + max(phi(z-e1), phi(z-e2))   (logsumexp for the
///          polymer), the south stationary recursion in the dual weights;
///   below: phi(z) = min(phi(z+e1), phi(z+e2)) - w(z)     (-logsumexp of
///          -phi for the polymer), so min of the outgoing increments
///          recovers w(z) exactly.
CoupledPair exact_coupled_pair(const CoupledPairSpec& spec, const RngStream& stream);

/// Finite-horizon Busemann estimate: G (or log Z) differences toward targets
/// along the xi[rho]-ray.
struct BusemannEstimate {
  std::vector<int> horizons;
  std::vector<Point> targets;
  std::vector<double> differences;
  double max_successive_difference{0.0};
};

BusemannEstimate estimate_busemann(ModelKind model, const Environment& env, double rho, Point x,
                                   Point y, const std::vector<int>& horizons);

enum class PathDirection { NorthEast, SouthWest };

struct SemiInfinitePathPrefix {
  Point start;
  PathDirection direction{PathDirection::NorthEast};
  LatticePath path;
};

/// Forward geodesic prefix (LPP): step to e1 iff B_{z,z+e1} <= B_{z,z+e2},
/// i.e. iff phi(z+e1) <= phi(z+e2); equality resolves to e1.
SemiInfinitePathPrefix forward_path_from_busemann(const BusemannField& field, Point x,
                                                 int steps);

/// Southwest geodesic prefix (LPP): step to -e1 iff B_{z-e1,z} <= B_{z-e2,z},
/// i.e. iff phi(z-e1) >= phi(z-e2); equality resolves to -e1.
SemiInfinitePathPrefix southwest_path_from_busemann(const BusemannField& field, Point x,
                                                   int steps);

/// Polymer transition probabilities. Forward at x uses I_{x+e1} and J_{x+e2}:
/// pi(x,x+e1) = J_{x+e2}/(I_{x+e1}+J_{x+e2}). Southwest at x uses I_x, J_x:
/// pi(x,x-e1) = J_x/(I_x+J_x). Each pair sums to 1 exactly.
std::pair<double, double> polymer_forward_kernel(double log_I_xpe1, double log_J_xpe2);
std::pair<double, double> polymer_southwest_kernel(double log_I_x, double log_J_x);

/// Samples the forward polymer chain from x until it reaches end_row.
SemiInfinitePathPrefix sample_forward_polymer_path(const BusemannField& field, Point x,
                                                  int end_row, RngStream& stream);

/// Samples the southwest polymer chain from x down to end_row.
SemiInfinitePathPrefix sample_southwest_polymer_path(const BusemannField& field, Point x,
                                                    int end_row, RngStream& stream);

struct DisjointnessReport {
  bool disjoint{true};
  // Primal edge and (unshifted) dual edge of the first crossing, if any.
  std::optional<std::pair<Point, Point>> primal_edge;
  std::optional<std::pair<Point, Point>> dual_edge;
};

/// Checks that no unit edge of the primal (up-right) prefix transversally
/// crosses an edge of the dual prefix once the latter is shifted by
/// -e* = (-1/2,-1/2). Sharing an endpoint after the shift is impossible;
/// touching configurations do not count as crossings.
DisjointnessReport check_primal_dual_disjoint(const SemiInfinitePathPrefix& primal,
                                              const SemiInfinitePathPrefix& dual);

}  // namespace lppsim
