#pragma once

#include <cstdint>

namespace spider {

/// SplitMix64 finalizer. Used to expand seeds and derive tagged sub-seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic child seed for a named sub-experiment (rule, coordinate, ...).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
  return mix64(mix64(seed) ^ mix64(tag + 0x632BE59BD9B4E019ULL));
}

/// Seedable pseudorandom stream, the only source of randomness in the library.
///
/// The generator is xoshiro256** with its 256-bit state filled from SplitMix64
/// applied to (seed, stream_id). Identical (seed, stream_id) pairs reproduce
/// identical sequences; parallel work is partitioned by stream_id.
///
/// The stream also carries a redraw counter. Samplers bump it whenever a
/// probability-zero floating event (underflow, overflow) forces a redraw, and
/// batch drivers report the total.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's nearly divisionless method).
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// One fair bit, served from a buffered 64-bit word.
  bool bit() noexcept {
    if (bits_left_ == 0) {
      bit_buffer_ = next_u64();
      bits_left_ = 64;
    }
    const bool b = (bit_buffer_ & 1U) != 0;
    bit_buffer_ >>= 1;
    --bits_left_;
    return b;
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t redraws() const noexcept { return redraws_; }
  void count_redraw() noexcept { ++redraws_; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t bit_buffer_ = 0;
  int bits_left_ = 0;
  std::uint64_t redraws_ = 0;
};

}  // namespace spider
