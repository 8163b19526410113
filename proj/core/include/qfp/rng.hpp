#pragma once

#include <cmath>
#include <cstdint>

namespace qfp {

// All randomness in the library flows from one master seed through
// derive_seed(master, role, index). Every independently seeded unit of work
// (a parameter sample, a synthetic event, a shot stream) gets its own stream,
// so results do not depend on evaluation order or thread count.
enum class SeedRole : std::uint64_t {
  theta_sample = 1,     // ansatz parameter draws, one stream per sample index
  surrogate = 2,        // surrogate coefficient draws
  target_coefficients = 3,
  train_init = 4,
  shot_stream = 5,
  event_stream = 6,
  batch_shuffle = 7,
  split_shuffle = 8,
};

namespace detail {
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

inline std::uint64_t derive_seed(std::uint64_t master, SeedRole role, std::uint64_t index) {
  // Mix the three inputs through successive splitmix64 steps; any change in
  // (master, role, index) yields an unrelated stream.
  std::uint64_t s = master;
  std::uint64_t a = detail::splitmix64_next(s);
  s ^= static_cast<std::uint64_t>(role) * 0xd1342543de82ef95ULL;
  std::uint64_t b = detail::splitmix64_next(s);
  s ^= index * 0xaf251af3b0f025b5ULL;
  std::uint64_t c = detail::splitmix64_next(s);
  return a ^ (b << 1) ^ c;
}

// Small deterministic generator (splitmix64 core). Hand-rolled rather than
// <random> so that outputs are identical across standard library
// implementations; uniform/gaussian draws are part of the reproducibility
// contract of every artifact this library writes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return detail::splitmix64_next(state_); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform in (0, 1]; used where a log or a strictly positive draw is needed.
  double uniform_open0() { return 1.0 - uniform(); }

  // Standard normal via Box-Muller; second value of each pair is cached.
  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = uniform_open0();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  // Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
      std::uint64_t v = next_u64();
      if (v >= threshold) return v % bound;
    }
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace qfp
