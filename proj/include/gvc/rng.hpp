#ifndef GVC_RNG_HPP_
#define GVC_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace gvc {

// splitmix64 finalizer. Used to mix seeds; never as a stream generator.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-call sampler seed: hash of the stream base seed and the window
// start index, so decode needs no encoder history.
inline std::uint64_t derive_seed(std::uint64_t base_seed,
                                 std::uint64_t window_start) {
  return mix64(base_seed ^ mix64(window_start + 1));
}

// Bounded integer in [0, n) drawn from a mt19937_64. Plain modulo: the
// engine's output sequence is pinned by the standard, and the slight
// modulo bias is irrelevant for scene synthesis.
inline int rand_below(std::mt19937_64 &rng, int n) {
  if (n <= 1) return 0;
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

// Integer in [lo, hi] inclusive.
inline int rand_range(std::mt19937_64 &rng, int lo, int hi) {
  return lo + rand_below(rng, hi - lo + 1);
}

// Deterministic standard-normal stream: mt19937_64 bits turned into
// uniforms explicitly, then Box-Muller. std::normal_distribution is
// implementation-defined, so it is avoided everywhere results must be
// reproducible.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in (0,1]: 53 random bits, never exactly zero.
  double uniform() {
    std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace gvc

#endif  // GVC_RNG_HPP_
