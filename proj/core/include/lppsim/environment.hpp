#pragma once

#include <cstdint>
#include <vector>

#include "lppsim/distributions.hpp"
#include "lppsim/lattice.hpp"
#include "lppsim/rng.hpp"

namespace lppsim {

/// Immutable grid of positive weights over a rectangular window of Z^2.
/// The window covers lattice points origin_offset + [0,width) x [0,height).
/// Weights are a pure function of the generating stream, addressed by site
/// counter, so the grid regenerates bit-identically from the same seed.
struct Environment {
  int width{0};
  int height{0};
  WeightDistribution dist;
  std::uint64_t master_seed{0};
  std::uint64_t stream_id{0};
  Point origin_offset{0, 0};
  std::vector<double> weights;  // row-major, index j*width + i

  bool contains(Point p) const {
    const int i = p.x - origin_offset.x;
    const int j = p.y - origin_offset.y;
    return i >= 0 && i < width && j >= 0 && j < height;
  }

  double at(Point p) const {
    return weights[static_cast<std::size_t>(p.y - origin_offset.y) * width +
                   (p.x - origin_offset.x)];
  }

  double at_local(int i, int j) const {
    return weights[static_cast<std::size_t>(j) * width + i];
  }
};

Environment sample_environment(int width, int height, const WeightDistribution& dist,
                               const RngStream& stream, Point origin_offset = {0, 0});

}  // namespace lppsim
