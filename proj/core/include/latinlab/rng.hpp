#pragma once

#include <cstdint>

namespace latinlab {

/// Deterministic, platform-independent random generator with splittable
/// streams: `Rng::stream(master, i)` yields the same sequence on every
/// platform, and distinct stream indices give statistically independent
/// sequences. Core is xoshiro256++ seeded through splitmix64; all derived
/// draws (bounded ints, doubles) use integer-only paths so replays are
/// bit-exact.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { reseed(seed); }

  /// Stream `index` of a master seed. Worker i of a seeded experiment uses
  /// stream i, which keeps parallel and serial runs identical.
  static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = master_seed + 0x9E3779B97F4A7C15ULL * index;
    return Rng(splitmix64(s));
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Unbiased uniform draw from [0, bound). bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection on the short range.
    std::uint64_t x = next();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    std::uint64_t low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() >> 63) != 0; }

  /// Bernoulli(p) via a precomputed integer threshold (see threshold_for).
  bool bernoulli(std::uint64_t threshold) { return next() < threshold; }

  /// Integer threshold such that next() < threshold has probability ~p
  /// (exact to within 2^-64).
  static std::uint64_t threshold_for(double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return ~0ULL;
    return static_cast<std::uint64_t>(p * 0x1.0p64);
  }

  static std::uint64_t splitmix64(std::uint64_t& state_inout) {
    std::uint64_t z = (state_inout += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  void reseed(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : s_) word = splitmix64(s);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
};

}  // namespace latinlab
