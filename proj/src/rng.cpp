#include "spider/rng.hpp"

namespace spider {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id) {
  // Two rounds of mixing so that (seed, id) and (id, seed) land far apart.
  std::uint64_t x = mix64(seed) ^ mix64(~stream_id ^ 0xD1B54A32D192ED03ULL);
  for (auto& word : state_) {
    x += 0x9E3779B97F4A7C15ULL;
    word = mix64(x);
  }
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RngStream::below(std::uint64_t bound) noexcept {
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace spider
