#include "lppsim/environment.hpp"

namespace lppsim {

Environment sample_environment(int width, int height, const WeightDistribution& dist,
                               const RngStream& stream, Point origin_offset) {
  if (width < 1 || height < 1) {
    throw DimensionError("sample_environment: dimensions must be >= 1");
  }
  Environment env;
  env.width = width;
  env.height = height;
  env.dist = dist;
  env.master_seed = stream.master_seed();
  env.stream_id = stream.stream_id();
  env.origin_offset = origin_offset;
  env.weights.resize(static_cast<std::size_t>(width) * height);
  for (std::size_t c = 0; c < env.weights.size(); ++c) {
    env.weights[c] = dist.quantile(stream.unit_at(c));
  }
  return env;
}

}  // namespace lppsim
