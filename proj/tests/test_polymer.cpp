#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"

#include "lppsim/distributions.hpp"
#include "lppsim/polymer.hpp"
#include "lppsim/rng.hpp"
#include "lppsim/special_functions.hpp"
#include "lppsim/stats.hpp"

using namespace lppsim;

namespace {

// Exhaustive partition sum in extended precision.
long double brute_Z(const Environment& env, Point z, Point dst, long double acc) {
  acc *= static_cast<long double>(env.at(z));
  if (z == dst) return acc;
  long double total = 0.0L;
  if (z.x < dst.x) total += brute_Z(env, z + kE1, dst, acc);
  if (z.y < dst.y) total += brute_Z(env, z + kE2, dst, acc);
  return total;
}

// Partition sum restricted to paths whose first vertex in row r is column c.
long double brute_Z_entry(const Environment& env, Point z, Point dst, int r, int c,
                          long double acc, bool entered_at_c) {
  acc *= static_cast<long double>(env.at(z));
  if (z.y == r && !entered_at_c) {
    if (z.x != c) return 0.0L;
    entered_at_c = true;
  }
  if (z == dst) return entered_at_c ? acc : 0.0L;
  long double total = 0.0L;
  if (z.x < dst.x) total += brute_Z_entry(env, z + kE1, dst, r, c, acc, entered_at_c);
  if (z.y < dst.y) total += brute_Z_entry(env, z + kE2, dst, r, c, acc, entered_at_c);
  return total;
}

}  // namespace

TEST_CASE("logsumexp2 identities") {
  CHECK(logsumexp2(0.0, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(logsumexp2(1.0, 3.0) == logsumexp2(3.0, 1.0));
  CHECK(logsumexp2(1.0, 3.0) ==
        doctest::Approx(std::log(std::exp(1.0) + std::exp(3.0))).epsilon(1e-14));
  // Far-apart arguments collapse to the max without overflow.
  CHECK(logsumexp2(1000.0, 0.0) == 1000.0);
  CHECK(logsumexp2(-2000.0, -1000.0) == -1000.0);
  CHECK(std::isfinite(logsumexp2(709.0, 709.0)));
  // Shift invariance.
  CHECK(logsumexp2(5.0 + 2.5, -1.0 + 2.5) ==
        doctest::Approx(logsumexp2(5.0, -1.0) + 2.5).epsilon(1e-15));
}

TEST_CASE("log partition DP equals extended-precision enumeration") {
  RngStream shapes(300, 0);
  for (int g = 0; g < 150; ++g) {
    const int w = 1 + static_cast<int>(shapes.next_u64() % 5);
    const int h = 1 + static_cast<int>(shapes.next_u64() % 5);
    const auto env = sample_environment(w, h, WeightDistribution::inverse_gamma(2.0),
                                        RngStream(301, g));
    const auto field = bulk_log_partition(env, {0, 0});
    const long double z = brute_Z(env, {0, 0}, {w - 1, h - 1}, 1.0L);
    const double rel = std::fabs(field.at({w - 1, h - 1}) -
                                 static_cast<double>(std::log(z)));
    CHECK(rel < 1e-10);
  }
}

TEST_CASE("rolling rows match the full log partition field") {
  const auto env = sample_environment(18, 14, WeightDistribution::inverse_gamma(1.5),
                                      RngStream(310, 0));
  const auto field = bulk_log_partition(env, {0, 0});
  const auto row = bulk_log_partition_row(env, {0, 0}, 9, 17);
  for (int j = 0; j <= 17; ++j) {
    CHECK(row[j] == doctest::Approx(field.at({j, 9})).epsilon(1e-13));
  }
  const auto senv = sample_environment(5, 5, WeightDistribution::inverse_gamma(2.0),
                                       RngStream(311, 0));
  const auto rev = bulk_log_partition_row_reverse(senv, {4, 4}, 1, 0);
  for (int j = 0; j <= 4; ++j) {
    const long double z = brute_Z(senv, {j, 1}, {4, 4}, 1.0L);
    CHECK(rev[j] == doctest::Approx(static_cast<double>(std::log(z))).epsilon(1e-12));
  }
}

TEST_CASE("quenched row-entry distribution against enumeration") {
  const auto env = sample_environment(5, 5, WeightDistribution::inverse_gamma(2.0),
                                      RngStream(320, 0));
  const Point src{0, 0}, dst{4, 4};
  const int r = 2;
  const auto dist = quenched_row_entry_distribution(env, src, dst, r);
  REQUIRE(dist.first_column == 0);
  REQUIRE(dist.mass.size() == 5);
  const long double z = brute_Z(env, src, dst, 1.0L);
  CHECK(dist.log_total == doctest::Approx(static_cast<double>(std::log(z))).epsilon(1e-12));
  double total = 0.0;
  for (int c = 0; c <= 4; ++c) {
    const long double zc = brute_Z_entry(env, src, dst, r, c, 1.0L, false);
    CHECK(dist.mass[c] == doctest::Approx(static_cast<double>(zc / z)).epsilon(1e-11));
    total += dist.mass[c];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quenched crossing probability: extremes, monotonicity, tail sums") {
  const auto env = sample_environment(6, 6, WeightDistribution::inverse_gamma(2.0),
                                      RngStream(321, 0));
  const Point src{0, 0}, dst{5, 5};
  const int r = 3;
  CHECK(quenched_crossing_probability(env, src, dst, r, 0) == doctest::Approx(1.0));
  CHECK(quenched_crossing_probability(env, src, dst, r, 6) == doctest::Approx(0.0));
  const auto dist = quenched_row_entry_distribution(env, src, dst, r);
  double prev = 1.1;
  for (int c = 0; c <= 5; ++c) {
    const double p = quenched_crossing_probability(env, src, dst, r, c);
    CHECK(p <= prev + 1e-15);
    prev = p;
    double tail = 0.0;
    for (int j = c; j <= 5; ++j) tail += dist.mass[j];
    CHECK(p == doctest::Approx(tail).epsilon(1e-11));
  }
}

TEST_CASE("quenched path sampler matches the exact entry distribution") {
  const auto env = sample_environment(4, 4, WeightDistribution::inverse_gamma(2.0),
                                      RngStream(322, 0));
  const Point src{0, 0}, dst{3, 3};
  const auto sampler = make_quenched_sampler(env, src, dst);
  const auto exact = quenched_row_entry_distribution(env, src, dst, 2);
  RngStream stream(323, 0);
  std::vector<double> counts(4, 0.0);
  const int reps = 20000;
  for (int k = 0; k < reps; ++k) {
    const auto path = quenched_sample_path(sampler, stream);
    REQUIRE(path.vertices.front() == src);
    REQUIRE(path.vertices.back() == dst);
    REQUIRE(path.size() == 7);
    for (std::size_t i = 1; i < path.size(); ++i) {
      const Point d = path.vertices[i] - path.vertices[i - 1];
      REQUIRE((d == kE1 || d == kE2));
    }
    for (const Point v : path.vertices) {
      if (v.y == 2) {
        counts[v.x] += 1.0;
        break;
      }
    }
  }
  std::vector<double> expected(4);
  for (int c = 0; c < 4; ++c) expected[c] = exact.mass[c] * reps;
  const auto gof = chi_square_gof(counts, expected);
  CHECK(gof.p_value > 0.001);
}

TEST_CASE("stationary polymer boundary profile is a signed log partial sum") {
  StationaryPolymerSpec spec;
  spec.rho = 0.5;
  spec.boundary_row = 0;
  spec.source_column = 1;
  spec.win_lo = -1;
  spec.win_hi = 3;
  spec.weights_first = 0;
  spec.log_boundary_weights = {0.5, -0.25, 1.0, 2.0};  // log Y_0 .. log Y_3
  CHECK(spec.log_boundary_profile(1) == 0.0);
  CHECK(spec.log_boundary_profile(3) == doctest::Approx(1.0 + 2.0));
  CHECK(spec.log_boundary_profile(-1) == doctest::Approx(-(0.5 - 0.25)));
  spec.validate();
}

TEST_CASE("stationary log partition equals the boundary-entry logsumexp") {
  const auto env = sample_environment(20, 6, WeightDistribution::inverse_gamma(1.2),
                                      RngStream(330, 0), {-12, 1});
  StationaryPolymerSpec spec;
  spec.rho = 0.5;
  spec.side = BoundarySide::South;
  spec.boundary_row = 0;
  spec.source_column = 0;
  spec.win_lo = -12;
  spec.win_hi = 7;
  spec.weights_first = -11;
  RngStream bs(331, 0);
  for (int j = -11; j <= 7; ++j) {
    spec.log_boundary_weights.push_back(std::log(invgamma_quantile(bs.next_unit(), spec.rho)));
  }
  const Point dst{4, 6};
  const auto res = stationary_log_partition(env, spec, dst);
  // Independent evaluation: lse_i [ log h_i + log Z_{(i,1),dst} ].
  const auto rev = bulk_log_partition_row_reverse(env, dst, 1, -12);
  double lse = -std::numeric_limits<double>::infinity();
  for (int i = -12; i <= dst.x; ++i) {
    lse = logsumexp2(lse, spec.log_boundary_profile(i) + rev[i + 12]);
  }
  CHECK(res.log_value == doctest::Approx(lse).epsilon(1e-12));
  REQUIRE(res.first_column == -12);
  double mass = 0.0;
  for (double m : res.exit_mass) {
    CHECK(m >= 0.0);
    mass += m;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  // Free-energy table agrees at several destinations.
  const auto field = stationary_log_field(env, spec, 6);
  for (Point p : {Point{4, 6}, Point{3, 4}, Point{7, 5}}) {
    CHECK(field.at(p) ==
          doctest::Approx(stationary_log_partition(env, spec, p).log_value).epsilon(1e-11));
  }
  CHECK(field.at({3, 0}) == doctest::Approx(spec.log_boundary_profile(3)).epsilon(1e-12));
}

TEST_CASE("window truncation raises when edge mass is non-negligible") {
  // A huge boundary weight at the window edge concentrates the entry mass
  // there.
  const auto env = sample_environment(6, 3, WeightDistribution::inverse_gamma(2.0),
                                      RngStream(332, 0), {-3, 1});
  StationaryPolymerSpec spec;
  spec.rho = 0.5;
  spec.side = BoundarySide::South;
  spec.boundary_row = 0;
  spec.source_column = 0;
  spec.win_lo = -3;
  spec.win_hi = 2;
  spec.weights_first = -2;
  spec.log_boundary_weights = {-40.0, 0.1, 0.2, -0.1, 0.3};
  CHECK_THROWS_AS(stationary_log_partition(env, spec, {2, 3}), WindowTooSmallError);
}

TEST_CASE("closed-form stationary free energy and direction") {
  // -64 * digamma(1/2) for the square case.
  CHECK(expected_stationary_logZ(0.5, 32, 32) ==
        doctest::Approx(125.66464166537110).epsilon(1e-13));
  CHECK(expected_stationary_logZ(0.3, 10, 20) ==
        doctest::Approx(-10.0 * digamma(0.3) - 20.0 * digamma(0.7)).epsilon(1e-14));
  const auto xi = characteristic_direction_polymer(0.4);
  CHECK(xi.first == doctest::Approx(trigamma(0.6)).epsilon(1e-14));
  CHECK(xi.second == doctest::Approx(trigamma(0.4)).epsilon(1e-14));
}
