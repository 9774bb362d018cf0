// Deterministic, seedable randomness: splitmix64 for seeding and seed
// derivation, xoshiro256** for the working streams, and hand-rolled
// distributions so results are identical across compilers and platforms
// (the standard <random> distributions are not).
#pragma once

#include <cmath>
#include <cstdint>

namespace nbvb {

// Finalizer of splitmix64; also used as a stand-alone 64-bit mixer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// One splitmix64 step: advances state, returns the next output.
inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  return mix64(state);
}

// Stable derivation of per-task seeds from (master, a, b). Each component is
// avalanche-mixed so that adjacent indices yield unrelated streams; used to
// give every (point, trial) its own independent seed.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                           std::uint64_t b = 0) {
  std::uint64_t h = mix64(master + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = mix64(h ^ (b + 0x632be59bd9b4e019ULL));
  return h;
}

class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64_next(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// Unbiased uniform draw in [0, bound), bound >= 1 (Lemire multiply-shift
// with rejection of the biased low slice).
inline std::uint64_t uniform_below(Xoshiro256ss& rng, std::uint64_t bound) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng.next()) * bound;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < bound) {
    const std::uint64_t t = (0 - bound) % bound;  // 2^64 mod bound
    while (lo < t) {
      m = static_cast<unsigned __int128>(rng.next()) * bound;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Uniform double in [0,1) with 53 random bits.
inline double uniform01(Xoshiro256ss& rng) { return (rng.next() >> 11) * 0x1.0p-53; }

// Standard normal via Box-Muller; consumes exactly two uniforms per call
// (no cached spare, so the draw sequence is position-independent).
inline double gaussian(Xoshiro256ss& rng) {
  double u;
  do {
    u = uniform01(rng);
  } while (u <= 0.0);
  const double v = uniform01(rng);
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u)) * std::cos(two_pi * v);
}

}  // namespace nbvb
