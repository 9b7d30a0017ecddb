#pragma once

#include <cmath>
#include <cstdint>

namespace mixclust::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 output function (Steele/Lea/Flood; Vigna's reference constants).
inline constexpr std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive hash for deriving child keys: derive(a,b) != derive(b,a)
// except by 64-bit accident. Used for (seed, stream) and trial-seed chains.
inline constexpr std::uint64_t derive(std::uint64_t a, std::uint64_t b) {
  return mix(a ^ (kGolden + mix(b + 0x632be59bd9b4e019ULL)));
}

// Counter-based generator: output i is mix(key + i·golden) — the SplitMix64
// sequence seeded at `key`, addressable by counter. Jumping to any position
// costs O(1), so per-row streams are reproducible under any work schedule.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(derive(seed, stream)) {}

  std::uint64_t next_u64() { return mix(key_ + kGolden * ++ctr_); }

  // Uniform on [0,1), 53 random bits.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0,1]; safe as a log argument.
  double next_uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box–Muller; second deviate of each pair is cached.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(next_uniform_pos()));
    const double a = 2.0 * 3.14159265358979323846 * next_uniform();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  bool next_bernoulli(double q) { return next_uniform() < q; }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mixclust::rng
