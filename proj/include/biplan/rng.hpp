#pragma once

#include <cstdint>

namespace biplan {

// SplitMix64. Used everywhere randomness is needed so that seeds are portable
// across platforms and standard-library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit && limit != 0);
    return v % bound;
  }

  int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

  // Uniform in [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

 private:
  std::uint64_t state_;
};

// Deterministic stream derivation: children of a seed are obtained by mixing
// in small tags, so independent streams never share draws.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  Rng r(seed ^ (tag * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
  return r.next();
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(seed, a), b);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix_seed(mix_seed(mix_seed(seed, a), b), c);
}

// Stream tags for the seed hierarchy.
namespace seed_tag {
inline constexpr std::uint64_t sample_exemplars = 0x01;
inline constexpr std::uint64_t verify_exemplars = 0x02;
inline constexpr std::uint64_t sample_corruption = 0x03;
inline constexpr std::uint64_t verify_noise = 0x04;
inline constexpr std::uint64_t reason_noise = 0x05;
inline constexpr std::uint64_t direction_coin = 0x06;
}  // namespace seed_tag

}  // namespace biplan
