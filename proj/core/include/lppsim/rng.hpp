#pragma once

#include <cstdint>

namespace lppsim {

/// Counter-based pseudorandom stream. Every output is a pure function of
/// (master_seed, stream_id, counter), so replica streams can be derived
/// independently on any worker without shared sequential state, and any
/// position in a stream can be addressed at random.
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t counter = 0);

  /// Raw 64-bit word at an explicit counter; does not advance the stream.
  std::uint64_t word_at(std::uint64_t counter) const;

  /// Uniform double strictly inside (0,1) at an explicit counter.
  double unit_at(std::uint64_t counter) const;

  std::uint64_t next_u64() { return word_at(counter_++); }
  double next_unit() { return unit_at(counter_++); }

  /// Derived stream, statistically independent of this one and of other
  /// substreams with different tags.
  RngStream substream(std::uint64_t tag) const;

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }
  void set_counter(std::uint64_t c) { counter_ = c; }

 private:
  std::uint64_t master_seed_{0};
  std::uint64_t stream_id_{0};
  std::uint64_t counter_{0};
  std::uint64_t key_{0};
};

}  // namespace lppsim
