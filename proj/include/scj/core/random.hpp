#pragma once

// Counter-based random streams. Every draw is a pure function of a 64-bit
// key, so a trial, a node or a link can be replayed without shared state.

#include <cmath>
#include <cstdint>
#include <limits>

namespace scj {

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Hash two words into one key. Order matters.
inline constexpr std::uint64_t combine_key(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a + 0x9e3779b97f4a7c15ULL + mix64(b ^ 0x632be59bd9b4e019ULL));
}

/// SplitMix64 sequence seeded by a key. Satisfies UniformRandomBitGenerator.
class KeyedStream {
public:
  using result_type = std::uint64_t;

  explicit constexpr KeyedStream(std::uint64_t key) noexcept : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform on (0, 1].
  double uniform_pos() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }
  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double exponential() noexcept { return -std::log(uniform_pos()); }

  /// Gamma(shape N, rate N) for integer N, unit mean.
  double gamma_unit_mean(int N) noexcept {
    double acc = 0.0;
    for (int i = 0; i < N; ++i) acc += exponential();
    return acc / N;
  }

private:
  std::uint64_t state_;
};

/// Poisson quantile: smallest k with P(Pois(mean) <= k) >= u.
/// Monotone in mean for a fixed u, which couples samples across densities.
std::uint64_t poisson_quantile(double mean, double u);

}  // namespace scj
