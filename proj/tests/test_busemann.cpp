#include <cmath>
#include <vector>

#include "doctest.h"

#include "lppsim/busemann.hpp"
#include "lppsim/distributions.hpp"
#include "lppsim/rng.hpp"
#include "lppsim/stats.hpp"

using namespace lppsim;

TEST_CASE("dual weight from two incoming increments") {
  CHECK(dual_weight(ModelKind::LPP, 2.0, 3.0) == 2.0);
  CHECK(dual_weight(ModelKind::LPP, 5.0, 0.25) == 0.25);
  // Polymer: harmonic-type combination 1/(1/a + 1/b) of the increments,
  // passed in logs.
  CHECK(dual_weight(ModelKind::Polymer, std::log(2.0), std::log(3.0)) ==
        doctest::Approx(1.2).epsilon(1e-14));
  CHECK(dual_weight(ModelKind::Polymer, std::log(4.0), std::log(4.0)) ==
        doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("coupled pair: geometry, cocycle, exact weight recovery") {
  CoupledPairSpec spec;
  spec.model = ModelKind::LPP;
  spec.rho = 0.45;
  spec.col_lo = -10;
  spec.col_hi = 25;
  spec.boundary_row = 0;
  spec.rows_below = 12;
  spec.rows_above = 8;
  const auto pair = exact_coupled_pair(spec, RngStream(900, 0));
  const auto& f = pair.field;
  CHECK(f.contains({-10, -12}));
  CHECK(f.contains({25, 8}));
  CHECK(!f.contains({26, 0}));
  // Cocycle additivity along any triple is exact by construction.
  const Point a{-3, -5}, b{4, 0}, c{10, 6};
  CHECK(f.B(a, b) + f.B(b, c) == f.B(a, c));
  // Boundary increments reappear as the row-0 horizontal increments.
  for (int j = -9; j <= 25; ++j) {
    CHECK(f.I_incr({j, 0}) == doctest::Approx(pair.boundary_increments[j + 9]).epsilon(1e-12));
  }
  // Below the row the minimum outgoing increment recovers the primal weight.
  for (int y = -12; y <= -1; ++y) {
    for (int i = -10; i <= 24; ++i) {
      if (y == -12 && i == -10) continue;  // needs both outgoing neighbours
      const Point z{i, y};
      const double rec = std::min(f.B(z, z + kE1), f.B(z, z + kE2));
      CHECK(rec == doctest::Approx(pair.primal_env.at(z)).epsilon(1e-12));
    }
  }
  // Above the row the dual weight of the incoming increments is the dual
  // environment weight.
  for (int y = 1; y <= 8; ++y) {
    for (int i = -9; i <= 25; ++i) {
      const Point z{i, y};
      CHECK(dual_weight(ModelKind::LPP, f.I_incr(z), f.J_incr(z)) ==
            doctest::Approx(pair.dual_env.at(z)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(exact_coupled_pair({ModelKind::LPP, 0.5, 0, 0, 0, 1, 1}, RngStream(1, 0)),
                  DimensionError);
  CHECK_THROWS_AS(exact_coupled_pair({ModelKind::LPP, 1.5, 0, 5, 0, 1, 1}, RngStream(1, 0)),
                  ParameterRangeError);
}

TEST_CASE("coupled pair: polymer weight recovery and boundary marginal") {
  CoupledPairSpec spec;
  spec.model = ModelKind::Polymer;
  spec.rho = 0.5;
  spec.col_lo = 0;
  spec.col_hi = 4000;
  spec.boundary_row = 0;
  spec.rows_below = 2;
  spec.rows_above = 2;
  const auto pair = exact_coupled_pair(spec, RngStream(901, 0));
  const auto& f = pair.field;
  // Increments on the boundary row are log of inverse-gamma(rho) draws.
  std::vector<double> draws;
  for (double b : pair.boundary_increments) draws.push_back(std::exp(b));
  const auto ks = ks_test(draws, [&](double x) { return invgamma_cdf(x, spec.rho); });
  CHECK(ks.p_value > 0.01);
  // Multiplicative weight recovery below the row.
  for (int i = 1; i <= 3999; ++i) {
    const Point z{i, -1};
    const double rec = dual_weight(ModelKind::Polymer, f.B(z, z + kE1), f.B(z, z + kE2));
    CHECK(rec == doctest::Approx(pair.primal_env.at(z)).epsilon(1e-10));
  }
  for (int i = 1; i <= 3999; ++i) {
    const Point z{i, 1};
    CHECK(dual_weight(ModelKind::Polymer, f.I_incr(z), f.J_incr(z)) ==
          doctest::Approx(pair.dual_env.at(z)).epsilon(1e-10));
  }
}

TEST_CASE("coupled pair: exponential boundary marginal") {
  CoupledPairSpec spec;
  spec.model = ModelKind::LPP;
  spec.rho = 0.35;
  spec.col_lo = 0;
  spec.col_hi = 5000;
  spec.boundary_row = 0;
  spec.rows_below = 1;
  spec.rows_above = 1;
  const auto pair = exact_coupled_pair(spec, RngStream(902, 0));
  const auto ks =
      ks_test(pair.boundary_increments, [&](double x) { return exp_cdf(x, spec.rho); });
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("deterministic geodesic prefixes follow the potential") {
  CoupledPairSpec spec;
  spec.model = ModelKind::LPP;
  spec.rho = 0.5;
  spec.col_lo = -30;
  spec.col_hi = 60;
  spec.boundary_row = 0;
  spec.rows_below = 30;
  spec.rows_above = 30;
  const auto pair = exact_coupled_pair(spec, RngStream(903, 0));
  const auto& f = pair.field;
  const auto fwd = forward_path_from_busemann(f, {0, -25}, 40);
  REQUIRE(fwd.path.size() == 41);
  CHECK(fwd.direction == PathDirection::NorthEast);
  for (std::size_t k = 0; k + 1 < fwd.path.size(); ++k) {
    const Point z = fwd.path.vertices[k];
    const Point d = fwd.path.vertices[k + 1] - z;
    REQUIRE((d == kE1 || d == kE2));
    // The chosen neighbour carries the smaller potential.
    const bool e1_wins = f.phi_at(z + kE1) <= f.phi_at(z + kE2);
    CHECK(d == (e1_wins ? kE1 : kE2));
  }
  const auto sw = southwest_path_from_busemann(f, {40, 25}, 40);
  REQUIRE(sw.path.size() == 41);
  CHECK(sw.direction == PathDirection::SouthWest);
  const Point me1{-1, 0}, me2{0, -1};
  for (std::size_t k = 0; k + 1 < sw.path.size(); ++k) {
    const Point z = sw.path.vertices[k];
    const Point d = sw.path.vertices[k + 1] - z;
    REQUIRE((d == me1 || d == me2));
    const bool e1_wins = f.phi_at(z - kE1) >= f.phi_at(z - kE2);
    CHECK(d == (e1_wins ? me1 : me2));
  }
  // Walking off the field reports missing coverage.
  CHECK_THROWS_AS(forward_path_from_busemann(f, {0, -25}, 1000), CoverageError);
  // Deterministic rules are LPP-only.
  BusemannField pf = f;
  pf.model = ModelKind::Polymer;
  CHECK_THROWS_AS(forward_path_from_busemann(pf, {0, -25}, 1), DimensionError);
  CHECK_THROWS_AS(southwest_path_from_busemann(pf, {40, 25}, 1), DimensionError);
}

TEST_CASE("polymer kernels: normalization and the square identity") {
  const auto fwd = polymer_forward_kernel(0.7, -0.3);
  CHECK(fwd.first + fwd.second == 1.0);
  CHECK(fwd.first == doctest::Approx(1.0 / (1.0 + std::exp(1.0))).epsilon(1e-14));
  const auto sw = polymer_southwest_kernel(-0.3, 0.7);
  CHECK(sw.first + sw.second == 1.0);

  // Forward step probability at z equals the southwest step probability at
  // the opposite corner z+e1+e2 of the same unit square.
  CoupledPairSpec spec;
  spec.model = ModelKind::Polymer;
  spec.rho = 0.5;
  spec.col_lo = -10;
  spec.col_hi = 10;
  spec.boundary_row = 0;
  spec.rows_below = 8;
  spec.rows_above = 8;
  const auto pair = exact_coupled_pair(spec, RngStream(904, 0));
  const auto& f = pair.field;
  for (int i = -9; i <= 8; ++i) {
    for (int y = -7; y <= 6; ++y) {
      const Point z{i, y};
      const Point top = z + kE1 + kE2;
      const double p_fwd = polymer_forward_kernel(f.I_incr(z + kE1), f.J_incr(z + kE2)).first;
      const double p_sw = polymer_southwest_kernel(f.I_incr(top), f.J_incr(top)).first;
      CHECK(p_fwd == doctest::Approx(p_sw).epsilon(1e-13));
    }
  }
}

TEST_CASE("sampled polymer chains take the kernel frequencies") {
  CoupledPairSpec spec;
  spec.model = ModelKind::Polymer;
  spec.rho = 0.5;
  spec.col_lo = -40;
  spec.col_hi = 40;
  spec.boundary_row = 0;
  spec.rows_below = 10;
  spec.rows_above = 10;
  const auto pair = exact_coupled_pair(spec, RngStream(905, 0));
  const auto& f = pair.field;
  const Point x{0, -5};
  const double p_e1 = polymer_forward_kernel(f.I_incr(x + kE1), f.J_incr(x + kE2)).first;
  RngStream stream(906, 0);
  int hits = 0;
  const int reps = 20000;
  for (int k = 0; k < reps; ++k) {
    const auto pre = sample_forward_polymer_path(f, x, -4, stream);
    REQUIRE(pre.path.size() >= 2);
    REQUIRE(pre.path.vertices.back().y == -4);
    if (pre.path.vertices[1] == x + kE1) ++hits;
  }
  const double freq = static_cast<double>(hits) / reps;
  const double se = std::sqrt(p_e1 * (1.0 - p_e1) / reps);
  CHECK(std::fabs(freq - p_e1) < 4.5 * se);
  // Sampling rules are polymer-only.
  BusemannField lf = f;
  lf.model = ModelKind::LPP;
  RngStream s2(906, 1);
  CHECK_THROWS_AS(sample_forward_polymer_path(lf, x, -4, s2), DimensionError);
  CHECK_THROWS_AS(sample_southwest_polymer_path(lf, x, -6, s2), DimensionError);
}

TEST_CASE("finite-horizon estimates: structure and determinism") {
  const auto env = sample_environment(120, 120, WeightDistribution::exponential(1.0),
                                      RngStream(907, 0));
  const std::vector<int> horizons{20, 40, 80};
  const auto est = estimate_busemann(ModelKind::LPP, env, 0.5, {0, 0}, {1, 0}, horizons);
  REQUIRE(est.targets.size() == 3);
  REQUIRE(est.differences.size() == 3);
  for (double d : est.differences) CHECK(std::isfinite(d));
  const auto est2 = estimate_busemann(ModelKind::LPP, env, 0.5, {0, 0}, {1, 0}, horizons);
  CHECK(est.differences == est2.differences);
  // Identical endpoints give identically zero differences.
  const auto zero = estimate_busemann(ModelKind::LPP, env, 0.5, {0, 0}, {0, 0}, horizons);
  for (double d : zero.differences) CHECK(d == 0.0);
  CHECK(zero.max_successive_difference == 0.0);
  CHECK_THROWS_AS(estimate_busemann(ModelKind::LPP, env, 0.5, {0, 0}, {1, 0}, {}),
                  DimensionError);
  CHECK_THROWS_AS(estimate_busemann(ModelKind::LPP, env, 0.5, {0, 0}, {1, 0}, {40, 20}),
                  DimensionError);
}

TEST_CASE("crossing detection on hand-built prefixes") {
  // Primal horizontal edge (0,0)-(1,0); dual vertical edge (1,0)-(1,1)
  // crosses it after the (-1/2,-1/2) shift.
  SemiInfinitePathPrefix primal;
  primal.start = {0, 0};
  primal.direction = PathDirection::NorthEast;
  primal.path.vertices = {{0, 0}, {1, 0}, {1, 1}};
  SemiInfinitePathPrefix dual;
  dual.start = {1, 1};
  dual.direction = PathDirection::SouthWest;
  dual.path.vertices = {{1, 1}, {1, 0}, {0, 0}};
  const auto hit = check_primal_dual_disjoint(primal, dual);
  CHECK(!hit.disjoint);
  REQUIRE(hit.primal_edge.has_value());
  CHECK(hit.primal_edge->first == Point{0, 0});
  CHECK(hit.primal_edge->second == Point{1, 0});
  REQUIRE(hit.dual_edge.has_value());
  CHECK(hit.dual_edge->first == Point{1, 0});
  CHECK(hit.dual_edge->second == Point{1, 1});

  // Touching at a corner without crossing is fine.
  SemiInfinitePathPrefix dual2;
  dual2.start = {2, 2};
  dual2.direction = PathDirection::SouthWest;
  dual2.path.vertices = {{2, 2}, {1, 2}, {1, 1}};
  CHECK(check_primal_dual_disjoint(primal, dual2).disjoint);

  // Primal vertical edge (1,0)-(1,1) vs dual horizontal (1,1)-(2,1).
  SemiInfinitePathPrefix dual3;
  dual3.start = {2, 2};
  dual3.direction = PathDirection::SouthWest;
  dual3.path.vertices = {{2, 2}, {2, 1}, {1, 1}};
  const auto hit3 = check_primal_dual_disjoint(primal, dual3);
  CHECK(!hit3.disjoint);
  REQUIRE(hit3.primal_edge.has_value());
  CHECK(hit3.primal_edge->first == Point{1, 0});
  CHECK(hit3.primal_edge->second == Point{1, 1});
}
