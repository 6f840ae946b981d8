#pragma once

#include <cstdint>

namespace groupmms {

inline constexpr const char* kRngName = "splitmix64";

// splitmix64 (Steele/Lea/Flood constants): a tiny seedable generator whose
// output is identical on every platform, which makes seeded runs
// bit-reproducible. Randomized algorithms consume one draw per item in
// item-index order; that draw order is part of their contract.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Independent child seed for (base, index); used for per-trial and per-retry
// streams so parallel trials never share state.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 g(base ^ (0xbf58476d1ce4e5b9ULL * (index + 1)));
  g.next();
  return g.next();
}

// Unbiased draw in [0, n) via rejection.
inline std::uint64_t bounded_draw(SplitMix64& g, std::uint64_t n) {
  const std::uint64_t limit = n * (~0ULL / n);
  for (;;) {
    const std::uint64_t x = g.next();
    if (x < limit) return x % n;
  }
}

}  // namespace groupmms
