#pragma once

#include <cstdint>
#include <random>

namespace baire {

// Seeded generator with a portable uniform draw, so traces replay bit-exact
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n). n must be positive.
  std::uint64_t uniform(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  // Uniform in [lo, hi].
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + uniform(hi - lo + 1); }

  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return uniform(den) < num; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace baire
