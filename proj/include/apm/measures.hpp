#pragma once

// Instantaneous performance measures and the reference averaging oracles:
// density-weighted quadrature and seeded Monte-Carlo, plus a bit-level
// error-rate simulator.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "apm/channels.hpp"
#include "apm/quadrature.hpp"
#include "apm/special_functions.hpp"

namespace apm {

/// An instantaneous performance measure evaluable at any SNR realization.
struct InstantMeasure {
  enum class Kind { Capacity, WojnarBer, Reliability, OutageIndicator };

  Kind kind = Kind::Capacity;
  double a = 1.0;       // WojnarBer / Reliability
  double b = 1.0;       // WojnarBer / Reliability
  double gamma_th = 1.0;  // OutageIndicator

  static InstantMeasure capacity() { return {}; }

  static InstantMeasure wojnar_ber(double a, double b) {
    check_ab(a, b);
    InstantMeasure m;
    m.kind = Kind::WojnarBer;
    m.a = a;
    m.b = b;
    return m;
  }

  static InstantMeasure reliability(double a, double b) {
    check_ab(a, b);
    InstantMeasure m;
    m.kind = Kind::Reliability;
    m.a = a;
    m.b = b;
    return m;
  }

  static InstantMeasure outage_indicator(double gamma_th) {
    if (!(gamma_th > 0.0))
      throw std::domain_error("outage_indicator: gamma_th must be > 0");
    InstantMeasure m;
    m.kind = Kind::OutageIndicator;
    m.gamma_th = gamma_th;
    return m;
  }

private:
  static void check_ab(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
      throw std::domain_error("modulation parameters a, b must be > 0");
  }
};

namespace detail {

// Bit error probability at instantaneous SNR g: Gamma(b, a g) / (2 Gamma(b)).
// The two standard detection laws get direct forms.
inline double wojnar_ber_instant(double a, double b, double g) {
  const double x = a * g;
  if (b == 1.0) return 0.5 * std::exp(-x);
  if (b == 0.5) return 0.5 * std::erfc(std::sqrt(x));
  return 0.5 * reg_upper_gamma(b, x);
}

}  // namespace detail

/// Value of `measure` at instantaneous SNR g >= 0. Capacity is in nats;
/// the outage indicator takes the value 1/2 at exact threshold equality.
inline double eval_instant(const InstantMeasure& measure, double g) {
  if (!(g >= 0.0)) throw std::domain_error("eval_instant: requires g >= 0");
  switch (measure.kind) {
    case InstantMeasure::Kind::Capacity:
      return std::log1p(g);
    case InstantMeasure::Kind::WojnarBer:
      return detail::wojnar_ber_instant(measure.a, measure.b, g);
    case InstantMeasure::Kind::Reliability:
      return 1.0 - 2.0 * detail::wojnar_ber_instant(measure.a, measure.b, g);
    case InstantMeasure::Kind::OutageIndicator:
      if (g < measure.gamma_th) return 1.0;
      if (g > measure.gamma_th) return 0.0;
      return 0.5;
  }
  throw std::logic_error("eval_instant: unreachable");
}

/// Density-weighted average of `measure`: int_0^inf measure(r) pdf(r) dr.
/// Requires a variant with a closed-form density.
inline double apm_quadrature(const FadingModel& model, AverageSnr gbar,
                             const InstantMeasure& measure, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("apm_quadrature: tol must be > 0");
  // probe density support once so unsupported variants fail fast
  (void)snr_pdf(model, gbar, gbar.value);
  // integrate in s = r / gbar so the density mass sits at s = O(1) for
  // every average SNR
  auto density_s = [&](double s) {
    return s > 0.0 ? gbar.value * snr_pdf(model, gbar, gbar.value * s) : 0.0;
  };
  if (measure.kind == InstantMeasure::Kind::OutageIndicator) {
    // the indicator truncates the integral at the threshold, which stays at
    // an interval endpoint; far above the bulk, integrate the complement
    const double s_th = measure.gamma_th / gbar.value;
    if (s_th <= 64.0) return integrate_adaptive(density_s, 0.0, s_th, tol);
    return 1.0 - integrate_semi_infinite(
                     [&](double u) { return density_s(s_th + u); }, tol);
  }
  // the BER integrand concentrates where the exponential error law decays,
  // which can sit far below the density bulk; scale to whichever is smaller
  const double r0 = measure.kind == InstantMeasure::Kind::WojnarBer
                        ? std::min(gbar.value, 1.0 / measure.a)
                        : gbar.value;
  auto f = [&](double s) {
    const double r = r0 * s;
    return r > 0.0 ? eval_instant(measure, r) * r0 * snr_pdf(model, gbar, r) : 0.0;
  };
  return integrate_semi_infinite(f, tol);
}

namespace detail {

inline unsigned worker_count() {
  if (const char* env = std::getenv("APM_BRIDGE_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

// Accumulates per-index (value, value^2) sums over [0, count) in fixed-size
// chunks reduced in index order, so the result does not depend on the number
// of workers.
template <typename PerIndex>
inline void parallel_moment_sums(std::uint64_t count, PerIndex&& per_index,
                                 double& sum, double& sum_sq) {
  constexpr std::uint64_t chunk = std::uint64_t{1} << 16;
  const std::uint64_t n_chunks = (count + chunk - 1) / chunk;
  std::vector<double> s(n_chunks, 0.0), s2(n_chunks, 0.0);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), n_chunks));
  auto run = [&](unsigned w) {
    for (std::uint64_t c = w; c < n_chunks; c += workers) {
      const std::uint64_t lo = c * chunk;
      const std::uint64_t hi = std::min(lo + chunk, count);
      double a = 0.0, a2 = 0.0;
      for (std::uint64_t i = lo; i < hi; ++i) {
        const double v = per_index(i);
        a += v;
        a2 += v * v;
      }
      s[c] = a;
      s2[c] = a2;
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  sum = 0.0;
  sum_sq = 0.0;
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    sum += s[c];
    sum_sq += s2[c];
  }
}

}  // namespace detail

struct MonteCarloResult {
  double mean;
  double stderr_;
};

/// Sample mean and standard error of `measure` over seeded channel draws.
/// Deterministic per (seed, samples) regardless of worker count.
inline MonteCarloResult apm_monte_carlo(const FadingModel& model, AverageSnr gbar,
                                        const InstantMeasure& measure,
                                        std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) throw std::domain_error("apm_monte_carlo: samples must be >= 2");
  double sum, sum_sq;
  detail::parallel_moment_sums(
      samples,
      [&](std::uint64_t i) {
        return eval_instant(measure, detail::snr_draw(model, gbar.value, seed, i));
      },
      sum, sum_sq);
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  double var = (sum_sq - n * mean * mean) / (n - 1.0);
  if (var < 0.0) var = 0.0;
  return {mean, std::sqrt(var / n)};
}

/// Bit-level error-rate simulation: per bit, draw an instantaneous SNR and
/// flip an error coin with the conditional Wojnar error probability. The
/// error fraction is an unbiased ABER estimate.
inline MonteCarloResult simulate_bit_errors(const FadingModel& model, AverageSnr gbar,
                                            double a, double b, std::uint64_t bits,
                                            std::uint64_t seed) {
  if (bits < 1) throw std::domain_error("simulate_bit_errors: bits must be >= 1");
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("simulate_bit_errors: a, b must be > 0");
  double sum, sum_sq;
  detail::parallel_moment_sums(
      bits,
      [&](std::uint64_t i) {
        RandomStream rs = RandomStream::for_draw(seed, i);
        const double g = detail::snr_draw_from(rs, model, gbar.value);
        const double p = detail::wojnar_ber_instant(a, b, g);
        return rs.uniform() < p ? 1.0 : 0.0;
      },
      sum, sum_sq);
  const double n = static_cast<double>(bits);
  const double aber = sum / n;
  const double se = bits > 1 ? std::sqrt(std::max(0.0, (sum_sq / n - aber * aber)) /
                                         (n - 1.0))
                             : 0.0;
  return {aber, se};
}

}  // namespace apm
