#pragma once

// Parametric fading-channel SNR models (Rayleigh, Nakagami-m, generalized
// Nakagami-m, cascaded GNM products) with densities, moments and seeded
// samplers, plus the closed-form Rayleigh/Nakagami expressions used as
// validation ground truth.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "apm/errors.hpp"
#include "apm/random.hpp"
#include "apm/special_functions.hpp"

namespace apm {

/// Average SNR as a linear power ratio, convertible to/from dB.
struct AverageSnr {
  double value;

  explicit AverageSnr(double linear) : value(linear) {
    if (!(linear > 0.0)) throw std::domain_error("AverageSnr: must be > 0");
  }
  static AverageSnr from_db(double db) { return AverageSnr(std::pow(10.0, db / 10.0)); }
  double db() const { return 10.0 * std::log10(value); }
};

/// One hop of a generalized Nakagami-m factor: fading figure m and shape xi.
struct GnmHop {
  double m;
  double xi;
};

struct FadingModel {
  enum class Kind { Rayleigh, Nakagami, GeneralizedNakagami, CascadedGnm };

  Kind kind = Kind::Rayleigh;
  double m = 1.0;
  double xi = 1.0;
  std::vector<GnmHop> hops;  // CascadedGnm only

  static FadingModel rayleigh() { return {}; }

  static FadingModel nakagami(double m) {
    check_m(m);
    FadingModel f;
    f.kind = Kind::Nakagami;
    f.m = m;
    return f;
  }

  static FadingModel generalized_nakagami(double m, double xi) {
    check_m(m);
    check_xi(xi);
    FadingModel f;
    f.kind = Kind::GeneralizedNakagami;
    f.m = m;
    f.xi = xi;
    return f;
  }

  static FadingModel cascaded_gnm(std::vector<GnmHop> hops) {
    if (hops.empty()) throw std::domain_error("cascaded_gnm: needs at least one hop");
    for (const auto& h : hops) {
      check_m(h.m);
      check_xi(h.xi);
    }
    FadingModel f;
    f.kind = Kind::CascadedGnm;
    f.hops = std::move(hops);
    return f;
  }

  std::string name() const {
    switch (kind) {
      case Kind::Rayleigh: return "rayleigh";
      case Kind::Nakagami: return "nakagami";
      case Kind::GeneralizedNakagami: return "gnm";
      case Kind::CascadedGnm: return "cascaded";
    }
    return "?";
  }

private:
  static void check_m(double m) {
    if (!(m >= 0.5)) throw std::domain_error("fading figure m must be >= 1/2");
  }
  static void check_xi(double xi) {
    if (!(xi > 0.0)) throw std::domain_error("shape xi must be > 0");
  }
};

namespace detail {

// Unit-mean normalizer of a GNM factor: beta = Gamma(m + 1/xi) / Gamma(m).
inline double gnm_beta(double m, double xi) {
  return std::exp(std::lgamma(m + 1.0 / xi) - std::lgamma(m));
}

}  // namespace detail

/// SNR density at r > 0. CascadedGnm has no elementary density and reports
/// UnsupportedVariantError; use sampling instead.
inline double snr_pdf(const FadingModel& model, AverageSnr gbar, double r) {
  if (!(r > 0.0)) throw std::domain_error("snr_pdf: requires r > 0");
  switch (model.kind) {
    case FadingModel::Kind::Rayleigh:
      return std::exp(-r / gbar.value) / gbar.value;
    case FadingModel::Kind::Nakagami: {
      const double m = model.m;
      const double t = m * r / gbar.value;
      return std::exp(m * std::log(m / gbar.value) + (m - 1.0) * std::log(r) - t -
                      std::lgamma(m));
    }
    case FadingModel::Kind::GeneralizedNakagami: {
      const double m = model.m, xi = model.xi;
      const double c = gbar.value / detail::gnm_beta(m, xi);
      const double g = std::pow(r / c, xi);
      return xi / r * std::exp(m * std::log(g) - g - std::lgamma(m));
    }
    case FadingModel::Kind::CascadedGnm:
      throw UnsupportedVariantError("snr_pdf: no closed density for cascaded GNM");
  }
  throw std::logic_error("snr_pdf: unreachable");
}

/// SNR distribution function at r >= 0; same variant support as snr_pdf.
inline double snr_cdf(const FadingModel& model, AverageSnr gbar, double r) {
  if (!(r >= 0.0)) throw std::domain_error("snr_cdf: requires r >= 0");
  if (r == 0.0) return 0.0;
  switch (model.kind) {
    case FadingModel::Kind::Rayleigh:
      return -std::expm1(-r / gbar.value);
    case FadingModel::Kind::Nakagami:
      return reg_lower_gamma(model.m, model.m * r / gbar.value);
    case FadingModel::Kind::GeneralizedNakagami: {
      const double c = gbar.value / detail::gnm_beta(model.m, model.xi);
      return reg_lower_gamma(model.m, std::pow(r / c, model.xi));
    }
    case FadingModel::Kind::CascadedGnm:
      throw UnsupportedVariantError("snr_cdf: no closed CDF for cascaded GNM");
  }
  throw std::logic_error("snr_cdf: unreachable");
}

/// Fractional moment E[gamma^n], closed form via gamma-function ratios.
/// E[gamma] = gbar exactly for every variant.
inline double snr_moment(const FadingModel& model, AverageSnr gbar, double n) {
  auto factor = [](double m, double xi, double n) {
    if (!(n > -m * xi))
      throw DivergentMomentError("snr_moment: moment of order " + std::to_string(n) +
                                 " does not exist");
    const double beta = detail::gnm_beta(m, xi);
    return std::exp(std::lgamma(m + n / xi) - std::lgamma(m) - n * std::log(beta));
  };
  switch (model.kind) {
    case FadingModel::Kind::Rayleigh:
      return std::pow(gbar.value, n) * factor(1.0, 1.0, n);
    case FadingModel::Kind::Nakagami:
      return std::pow(gbar.value, n) * factor(model.m, 1.0, n);
    case FadingModel::Kind::GeneralizedNakagami:
      return std::pow(gbar.value, n) * factor(model.m, model.xi, n);
    case FadingModel::Kind::CascadedGnm: {
      double prod = std::pow(gbar.value, n);
      for (const auto& h : model.hops) prod *= factor(h.m, h.xi, n);
      return prod;
    }
  }
  throw std::logic_error("snr_moment: unreachable");
}

namespace detail {

// One unit-mean GNM factor drawn from the given stream.
inline double gnm_factor_draw(RandomStream& rs, double m, double xi) {
  const double g = rs.gamma(m);
  return std::pow(g, 1.0 / xi) / gnm_beta(m, xi);
}

// Instantaneous SNR draw from an already-positioned stream.
inline double snr_draw_from(RandomStream& rs, const FadingModel& model, double gbar) {
  switch (model.kind) {
    case FadingModel::Kind::Rayleigh:
      return gbar * rs.gamma(1.0);
    case FadingModel::Kind::Nakagami:
      return gbar * rs.gamma(model.m) / model.m;
    case FadingModel::Kind::GeneralizedNakagami:
      return gbar * gnm_factor_draw(rs, model.m, model.xi);
    case FadingModel::Kind::CascadedGnm: {
      double v = gbar;
      for (const auto& h : model.hops) v *= gnm_factor_draw(rs, h.m, h.xi);
      return v;
    }
  }
  throw std::logic_error("snr_draw_from: unreachable");
}

// Instantaneous SNR draw for variate `index` of `seed`.
inline double snr_draw(const FadingModel& model, double gbar,
                       std::uint64_t seed, std::uint64_t index) {
  RandomStream rs = RandomStream::for_draw(seed, index);
  return snr_draw_from(rs, model, gbar);
}

}  // namespace detail

/// `count` i.i.d. SNR draws; deterministic for fixed (seed, count) and
/// independent of sharding because each draw has its own substream.
inline std::vector<double> sample(const FadingModel& model, AverageSnr gbar,
                                  std::uint64_t seed, std::size_t count) {
  if (count < 1) throw std::domain_error("sample: count must be >= 1");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = detail::snr_draw(model, gbar.value, seed, i);
  return out;
}

/// Exact Rayleigh average capacity exp(1/z) E1(1/z), continued to complex z.
/// On the negative real axis the cut-limit convention of e1_complex applies,
/// giving Im = pi exp(-1/|z|) there. Overflow-safe at both ends.
inline Complex acc_closed_rayleigh(Complex z) {
  if (z == Complex(0.0, 0.0)) throw std::domain_error("acc_closed_rayleigh: z must be nonzero");
  if (z.imag() == 0.0 && z.real() > 0.0) return {expx_e1(1.0 / z.real()), 0.0};
  if (z.imag() == 0.0) {
    const double x = -1.0 / z.real();  // 1/z = -x, x > 0
    return {-detail::exm_ei(x), M_PI * std::exp(-x)};
  }
  const Complex w = 1.0 / z;
  return std::exp(w) * e1_complex(w);
}

/// Im of the Nakagami-m average capacity continued to the negative axis:
/// Im C_avg(-gbar) = pi Gamma(m, m/gbar) / Gamma(m).
inline double acc_imag_neg_nakagami(AverageSnr gbar, double m) {
  if (!(m >= 0.5)) throw std::domain_error("acc_imag_neg_nakagami: m must be >= 1/2");
  return M_PI * reg_upper_gamma(m, m / gbar.value);
}

/// Closed-form Rayleigh average BER of the Wojnar family:
/// 1/2 - (1/2) (a gbar / (1 + a gbar))^b.
inline double aber_closed_rayleigh_wojnar(AverageSnr gbar, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("aber_closed_rayleigh_wojnar: a, b must be > 0");
  const double t = a * gbar.value;
  return 0.5 - 0.5 * std::pow(t / (1.0 + t), b);
}

}  // namespace apm
