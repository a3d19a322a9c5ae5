#pragma once

// Counter-based deterministic random streams. Every variate gets its own
// substream keyed by (seed, index), so draws are independent of evaluation
// order and sampling can be sharded without changing the result.

#include <cmath>
#include <cstdint>

namespace apm {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// A small deterministic stream of uniforms/normals derived from a key.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t key) : state_(key) {
    // burn-in decorrelates nearby keys
    detail::splitmix64(state_);
    detail::splitmix64(state_);
  }

  /// Substream for variate `index` under `seed`; distinct indices are
  /// statistically independent.
  static RandomStream for_draw(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ 0x2545f4914f6cdd1dULL;
    detail::splitmix64(s);
    return RandomStream(s ^ (index * 0xda942042e4dd58b5ULL));
  }

  /// Uniform on (0,1), never exactly 0 or 1.
  double uniform() {
    const std::uint64_t r = detail::splitmix64(state_);
    return (static_cast<double>(r >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Gamma(shape, 1) via Marsaglia-Tsang squeeze/rejection.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      return g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

private:
  std::uint64_t state_;
};

}  // namespace apm
