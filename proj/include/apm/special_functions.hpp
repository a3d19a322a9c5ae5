#pragma once

// Special functions used throughout the library: log-gamma, regularized
// incomplete gamma, Dawson's integral, the exponential integral E1 (real and
// complex, with a pinned branch convention on the negative axis) and the
// confluent hypergeometric function 1F1(1;b;-x).

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "apm/errors.hpp"

namespace apm {

using Complex = std::complex<double>;

inline constexpr double euler_gamma = 0.57721566490153286060651209008;

/// ln Gamma(x) for x > 0.
inline double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma: requires x > 0");
  return std::lgamma(x);
}

namespace detail {

// Series for the regularized lower incomplete gamma P(b,x), valid x < b+1.
inline double reg_lower_gamma_series(double b, double x) {
  double ap = b;
  double sum = 1.0 / b;
  double term = sum;
  for (int k = 0; k < 500; ++k) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + b * std::log(x) - std::lgamma(b));
}

// Modified-Lentz continued fraction for the regularized upper gamma Q(b,x),
// valid x >= b+1.
inline double reg_upper_gamma_cf(double b, double x) {
  const double tiny = 1e-300;
  double c = 1.0 / tiny;
  double d = 1.0 / (x + 1.0 - b);
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - b);
    const double bn = x + 2.0 * i + 1.0 - b;
    d = bn + an * d;
    if (std::abs(d) < tiny) d = tiny;
    c = bn + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + b * std::log(x) - std::lgamma(b)) * h;
}

}  // namespace detail

/// Regularized upper incomplete gamma Q(b,x) = Gamma(b,x)/Gamma(b).
inline double reg_upper_gamma(double b, double x) {
  if (!(b > 0.0)) throw std::domain_error("reg_upper_gamma: requires b > 0");
  if (!(x >= 0.0)) throw std::domain_error("reg_upper_gamma: requires x >= 0");
  if (x == 0.0) return 1.0;
  if (x < b + 1.0) return 1.0 - detail::reg_lower_gamma_series(b, x);
  return detail::reg_upper_gamma_cf(b, x);
}

/// Regularized lower incomplete gamma P(b,x) = 1 - Q(b,x).
inline double reg_lower_gamma(double b, double x) {
  if (!(b > 0.0)) throw std::domain_error("reg_lower_gamma: requires b > 0");
  if (!(x >= 0.0)) throw std::domain_error("reg_lower_gamma: requires x >= 0");
  if (x == 0.0) return 0.0;
  if (x < b + 1.0) return detail::reg_lower_gamma_series(b, x);
  return 1.0 - detail::reg_upper_gamma_cf(b, x);
}

/// Dawson's integral F(x) = exp(-x^2) int_0^x exp(t^2) dt.
///
/// Small arguments use the Maclaurin series; elsewhere Rybicki's sampling
/// expansion with h = 0.25, whose truncation error is far below 1e-12.
inline double dawson(double x) {
  const double ax = std::abs(x);
  if (ax < 0.5) {
    double term = x;
    double sum = x;
    const double x2 = x * x;
    for (int n = 0; n < 50; ++n) {
      term *= -2.0 * x2 / (2.0 * n + 3.0);
      sum += term;
      if (std::abs(term) < 1e-18) break;
    }
    return sum;
  }
  const double h = 0.25;
  const double window = 9.0;
  long n_lo = static_cast<long>(std::floor((ax - window) / h));
  if (n_lo % 2 == 0) n_lo += 1;
  const long n_hi = static_cast<long>(std::ceil((ax + window) / h));
  double sum = 0.0;
  for (long n = n_lo; n <= n_hi; n += 2) {
    if (n == 0) continue;
    const double d = ax - n * h;
    sum += std::exp(-d * d) / n;
  }
  const double f = sum / std::sqrt(M_PI);
  return x < 0.0 ? -f : f;
}

namespace detail {

// Convergent series E1(x) = -gamma - ln x - sum (-x)^k / (k k!).
inline double e1_series(double x) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -x / k;
    sum += term / k;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return -euler_gamma - std::log(x) - sum;
}

// Modified-Lentz continued fraction: returns exp(x) * E1(x), stable for x >= 1.
inline double expx_e1_cf(double x) {
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 300; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h;
}

// exp(-x) * Ei(x) for large x via the asymptotic series, truncated at the
// smallest term.
inline double exm_ei_asymptotic(double x) {
  double term = 1.0 / x;
  double sum = term;
  for (int k = 1; k < 100; ++k) {
    const double next = term * k / x;
    if (next >= term) break;  // divergent tail reached
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// Ei(x) for x > 0 (principal value); series up to 500, asymptotic beyond.
inline double ei_positive(double x) {
  if (x <= 500.0) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 2000; ++k) {
      term *= x / k;
      sum += term / k;
      if (term / k < 1e-17 * std::abs(sum) && k > x) break;
    }
    return euler_gamma + std::log(x) + sum;
  }
  return std::exp(x) * exm_ei_asymptotic(x);
}

// exp(-x) * Ei(x), stable for all x > 0 (no overflow).
inline double exm_ei(double x) {
  if (x <= 500.0) return std::exp(-x) * ei_positive(x);
  return exm_ei_asymptotic(x);
}

// Ei extended to complex w with Re w > 0 (principal log); series evaluation.
inline Complex ei_complex_rhp(Complex w) {
  Complex sum = 0.0;
  Complex term = 1.0;
  for (int k = 1; k < 2000; ++k) {
    term *= w / static_cast<double>(k);
    sum += term / static_cast<double>(k);
    if (std::abs(term) < 1e-17 * (1.0 + std::abs(sum)) && k > std::abs(w)) break;
  }
  return euler_gamma + std::log(w) + sum;
}

// Continued fraction for E1(z), |z| large, Re z >= 0.
inline Complex e1_cf_complex(Complex z) {
  const double tiny = 1e-300;
  Complex b = z + 1.0;
  Complex c = 1.0 / tiny;
  Complex d = 1.0 / b;
  Complex h = d;
  for (int i = 1; i < 500; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    const Complex delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-z) * h;
}

}  // namespace detail

/// Exponential integral E1(x) for x > 0.
inline double e1_real(double x) {
  if (!(x > 0.0)) throw std::domain_error("e1_real: requires x > 0 (use e1_complex)");
  if (x <= 4.0) return detail::e1_series(x);
  return std::exp(-x) * detail::expx_e1_cf(x);
}

/// exp(x) * E1(x), overflow-safe for large x.
inline double expx_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("expx_e1: requires x > 0");
  if (x <= 4.0) return std::exp(x) * detail::e1_series(x);
  return detail::expx_e1_cf(x);
}

/// Principal-branch E1(z) with the cut on the negative real axis.
///
/// On the cut the value is the limit from the lower half-plane (argument
/// phase -pi), so Im E1(-x) = +pi for x > 0. This sign is what makes the
/// outage relationships land in [0,1].
inline Complex e1_complex(Complex z) {
  if (z == Complex(0.0, 0.0)) throw std::domain_error("e1_complex: z must be nonzero");
  if (z.imag() == 0.0 && z.real() > 0.0) return {e1_real(z.real()), 0.0};
  if (z.imag() == 0.0) {  // on the cut: lower-half-plane limit
    const double x = -z.real();
    return {-detail::ei_positive(x), M_PI};
  }
  const double az = std::abs(z);
  if (az <= 4.0) {
    // series with the principal complex logarithm
    Complex sum = 0.0;
    Complex term = 1.0;
    for (int k = 1; k < 300; ++k) {
      term *= -z / static_cast<double>(k);
      sum += term / static_cast<double>(k);
      if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return -euler_gamma - std::log(z) - sum;
  }
  if (z.real() >= 0.0) return detail::e1_cf_complex(z);
  // left half-plane, off the cut: E1(z) = -Ei(-z) - i sgn(Im z) pi
  const double sgn = z.imag() > 0.0 ? 1.0 : -1.0;
  return -detail::ei_complex_rhp(-z) - Complex(0.0, sgn * M_PI);
}

/// Kummer's 1F1(1; b; -x) for b > 0 and x >= 0.
///
/// Evaluated through the Kummer transformation exp(-x) 1F1(b-1; b; x), whose
/// series has a single sign change and stays cancellation-free for all x.
inline double kummer_1f1_one(double b, double x) {
  if (!(b > 0.0)) throw std::domain_error("kummer_1f1_one: requires b > 0");
  if (!(x >= 0.0)) throw std::domain_error("kummer_1f1_one: requires x >= 0");
  if (x == 0.0) return 1.0;
  if (x > 600.0) {
    // the transformed series would overflow; the remainder of the large-x
    // expansion ((b-1)/x) sum_s (2-b)_s x^{-s} is below exp(-x) here
    double term = (b - 1.0) / x;
    double sum = term;
    for (int s = 0; s < 400; ++s) {
      const double next = term * (2.0 - b + s) / x;
      if (std::abs(next) >= std::abs(term)) break;
      term = next;
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 10000; ++k) {
    term *= (b - 1.0 + k) / (b + k) * x / (k + 1.0);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > x) break;
  }
  return std::exp(-x) * sum;
}

}  // namespace apm
