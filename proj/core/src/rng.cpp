#include "lppsim/rng.hpp"

namespace lppsim {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Finalizer from MurmurHash3 / SplitMix64; full avalanche on 64 bits.
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xFF51AFD7ED558CCDULL;
  z ^= z >> 33;
  z *= 0xC4CEB9FE1A85EC53ULL;
  z ^= z >> 33;
  return z;
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t counter)
    : master_seed_(master_seed), stream_id_(stream_id), counter_(counter) {
  key_ = mix64(master_seed + kGolden * mix64(stream_id + kGolden));
}

std::uint64_t RngStream::word_at(std::uint64_t counter) const {
  return mix64(key_ + kGolden * counter);
}

double RngStream::unit_at(std::uint64_t counter) const {
  // 53-bit mantissa, offset by half an ulp so 0 and 1 are unreachable.
  return (static_cast<double>(word_at(counter) >> 11) + 0.5) * 0x1.0p-53;
}

RngStream RngStream::substream(std::uint64_t tag) const {
  return RngStream(master_seed_, mix64(stream_id_ + kGolden * (tag + 1)));
}

}  // namespace lppsim
