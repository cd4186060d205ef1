/**
 * @file rng.hpp
 * @brief Seedable, portable random generator for instance generation.
 *
 * Implements xoshiro256++ (Blackman & Vigna) with splitmix64 seed expansion.
 * Unlike std::uniform_real_distribution, every transformation here is pinned
 * by this header, so a stored seed reproduces the same instance on any
 * platform (uniform draws are bit-exact; the normal transform goes through
 * sqrt/log and may wobble in the last ulp across libms).
 */

#ifndef FMCLP_RNG_HPP
#define FMCLP_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace fmclp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {
    // splitmix64 expansion of the user seed into the xoshiro state.
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  /// xoshiro256++ step.
  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53 mantissa bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [a, b); returns a when the interval is degenerate.
  /// Always consumes exactly one generator step.
  double uniform(double a, double b) { return a + uniform01() * (b - a); }

  /// Normal draw via the Marsaglia polar method (rejection loop; consumes a
  /// variable but seed-determined number of steps).
  double normal(double mean, double sd) {
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return mean + sd * u * std::sqrt(-2.0 * std::log(s) / s);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_ = 0;
};

}  // namespace fmclp

#endif  // FMCLP_RNG_HPP
