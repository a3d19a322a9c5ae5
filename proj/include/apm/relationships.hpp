#pragma once

// The headline conversions between average performance measures: average
// capacity from average BER, outage probability and outage capacity from
// average capacity, the SNR density from average capacity, and a general
// measure from average capacity.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>

#include "apm/channels.hpp"
#include "apm/curves.hpp"
#include "apm/lamperti.hpp"
#include "apm/measures.hpp"
#include "apm/quadrature.hpp"
#include "apm/special_functions.hpp"

namespace apm {

/// Binary modulation parameters: a selects the scheme (1/2 orthogonal,
/// 1 antipodal), b the detection (1/2 coherent, 1 non-coherent). Other
/// positive values are accepted but flagged as non-standard.
struct ModulationParams {
  double a;
  double b;
  bool non_standard = false;

  ModulationParams(double a_, double b_) : a(a_), b(b_) {
    if (!(a > 0.0) || !(b > 0.0))
      throw std::domain_error("ModulationParams: a, b must be > 0");
    auto standard = [](double v) { return v == 0.5 || v == 1.0; };
    non_standard = !(standard(a) && standard(b));
  }
};

/// Kernel turning an average reliability curve into average capacity:
/// Z(u) = (1/u) 1F1(1; b; -a u). The two detection laws short-circuit to
/// exp(-a u)/u and (1/u)(1 - 2 sqrt(a u) F(sqrt(a u))) with Dawson's F.
inline Kernel kernel_acc_from_reliability(const ModulationParams& p) {
  const double a = p.a, b = p.b;
  Kernel k;
  k.tag = "acc-from-reliability";
  if (b == 1.0) {
    k.eval = [a](double u) { return std::exp(-a * u) / u; };
  } else if (b == 0.5) {
    k.eval = [a](double u) {
      const double s = std::sqrt(a * u);
      return (1.0 - 2.0 * s * dawson(s)) / u;
    };
  } else {
    k.eval = [a, b](double u) { return kummer_1f1_one(b, a * u) / u; };
  }
  return k;
}

/// Optional integration support [u_lo, u_hi] for the capacity-from-BER
/// integral, needed when the BER curve is only trustworthy on a window.
struct KernelSupport {
  double u_lo;
  double u_hi;
};

/// Average capacity (nats) from an average BER curve under modulation p:
///   C(gbar) = int Z_{a,b}(u) {1 - 2 E(u gbar)} du.
/// The integral runs in log-u coordinates over a support chosen from the
/// tolerance (or supplied explicitly); BER values outside [0, 1/2] are
/// rejected as a range error.
inline double acc_from_aber(const ApmCurve& aber, const ModulationParams& p,
                            AverageSnr gbar, double tol,
                            std::optional<KernelSupport> support = std::nullopt) {
  if (!(tol > 0.0)) throw std::domain_error("acc_from_aber: tol must be > 0");
  const Kernel kernel = kernel_acc_from_reliability(p);
  double u_lo, u_hi;
  if (support) {
    u_lo = support->u_lo;
    u_hi = support->u_hi;
    if (!(u_lo > 0.0) || !(u_hi > u_lo))
      throw std::domain_error("acc_from_aber: invalid support");
  } else {
    // small-u tail: reliability ~ (a u gbar)^b, so the truncated mass is
    // ~ (a gbar u_lo)^b / b; large-u tail: |Z| ~ max(|b-1|, 1/2)/(a u^2)
    u_lo = std::pow(p.b * tol / 10.0, 1.0 / p.b) / (p.a * gbar.value);
    u_hi = std::max(50.0 / p.a, (std::abs(p.b - 1.0) + 0.5) / (p.a * tol));
  }
  auto f = [&](double v) {
    const double u = std::exp(v);
    const double e = aber(u * gbar.value);
    if (!(e >= -1e-9) || !(e <= 0.5 + 1e-9))
      throw std::range_error("acc_from_aber: BER value outside [0, 1/2]");
    const double q = 1.0 - 2.0 * std::min(0.5, std::max(0.0, e));
    return kernel.eval(u) * q * u;
  };
  return integrate_adaptive(f, std::log(u_lo), std::log(u_hi), tol);
}

/// Outage probability from the analytically continued average capacity:
///   P_out = 1 - (1/pi) Im{ C(-e^eps gbar / gamma_th) },
/// the negative-axis value taken as the lower-cut limit. The result is
/// clamped to [0,1]; clamping beyond 1e-6 sets the branch warning.
inline double op_from_acc(const ApmCurve& acc, AverageSnr gbar, double gamma_th,
                          double eps = 1e-4, bool* branch_warning = nullptr) {
  if (!(gamma_th > 0.0)) throw std::domain_error("op_from_acc: gamma_th must be > 0");
  if (!(eps > 0.0)) throw std::domain_error("op_from_acc: eps must be > 0");
  const Complex c = acc.eval_complex(
      Complex(-std::exp(eps) * gbar.value / gamma_th, 0.0));
  const double p = 1.0 - c.imag() / M_PI;
  const double clamped = std::min(1.0, std::max(0.0, p));
  if (branch_warning) *branch_warning = std::abs(clamped - p) > 1e-6;
  return clamped;
}

/// Outage capacity: probability that instantaneous capacity falls below
/// C_th nats. Delegates to op_from_acc at gamma_th = e^{C_th} - 1.
inline double oc_from_acc(const ApmCurve& acc, AverageSnr gbar, double c_th,
                          double eps = 1e-4, bool* branch_warning = nullptr) {
  if (!(c_th > 0.0)) throw std::domain_error("oc_from_acc: C_th must be > 0");
  return op_from_acc(acc, gbar, std::expm1(c_th), eps, branch_warning);
}

/// SNR density recovered from the average capacity:
///   f(r) = -(1/pi) d/dr Im{ C(-gbar/r) },
/// derivative via central difference. Small negative values are clamped to
/// zero; below -1e-6 the warning flag is set instead of silently clamping.
inline double pdf_from_acc(const ApmCurve& acc, AverageSnr gbar, double r,
                           double h = 0.0, bool* negativity_warning = nullptr) {
  if (!(r > 0.0)) throw std::domain_error("pdf_from_acc: r must be > 0");
  if (h == 0.0) h = std::max(1e-6, 1e-4 * r);
  if (!(h > 0.0) || !(r - h > 0.0))
    throw std::domain_error("pdf_from_acc: requires 0 < h < r");
  auto im_at = [&](double rr) {
    return acc.eval_complex(Complex(-gbar.value / rr, 0.0)).imag();
  };
  const double deriv = central_diff(im_at, r, h);
  const double f = -deriv / M_PI;
  if (negativity_warning) *negativity_warning = f < -1e-6;
  return std::max(0.0, f);
}

namespace detail {

// Derivative of the instantaneous Wojnar BER:
// E'(r) = -a (a r)^{b-1} e^{-a r} / (2 Gamma(b)).
inline double wojnar_ber_derivative(double a, double b, double r) {
  return -a * std::exp((b - 1.0) * std::log(a * r) - a * r - std::lgamma(b)) / 2.0;
}

}  // namespace detail

/// General average measure from the average capacity:
///   H_avg = H(0) + (1/pi) int_0^inf H'(r) Im{ C(-gbar/r) } dr,
/// with the analytic derivative of the instantaneous measure. The outage
/// indicator's derivative is a point mass, so that case is routed through
/// op_from_acc directly.
inline double apm_from_acc(const ApmCurve& acc, const InstantMeasure& measure,
                           AverageSnr gbar, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("apm_from_acc: tol must be > 0");
  if (measure.kind == InstantMeasure::Kind::OutageIndicator)
    return op_from_acc(acc, gbar, measure.gamma_th);
  double at_zero;
  std::function<double(double)> deriv;
  switch (measure.kind) {
    case InstantMeasure::Kind::Capacity:
      at_zero = 0.0;
      deriv = [](double r) { return 1.0 / (1.0 + r); };
      break;
    case InstantMeasure::Kind::WojnarBer:
      at_zero = 0.5;
      deriv = [&measure](double r) {
        return detail::wojnar_ber_derivative(measure.a, measure.b, r);
      };
      break;
    case InstantMeasure::Kind::Reliability:
      at_zero = 0.0;
      deriv = [&measure](double r) {
        return -2.0 * detail::wojnar_ber_derivative(measure.a, measure.b, r);
      };
      break;
    default:
      throw std::logic_error("apm_from_acc: unreachable");
  }
  auto f = [&](double r) {
    if (!(r > 0.0)) return 0.0;
    const double im = acc.eval_complex(Complex(-gbar.value / r, 0.0)).imag();
    return deriv(r) * im / M_PI;
  };
  return at_zero + integrate_semi_infinite(f, tol);
}

/// Exact Rayleigh average-capacity curve with its analytic continuation.
inline ApmCurve make_acc_curve_rayleigh() {
  ApmCurve c;
  c.real_eval = [](double gbar) { return expx_e1(1.0 / gbar); };
  c.complex_eval = [](Complex z) { return acc_closed_rayleigh(z); };
  c.hurst_window = {0.0, 1.0};
  c.label = "rayleigh-acc";
  return c;
}

/// Nakagami-m average-capacity curve. On the positive axis the value comes
/// from density-weighted quadrature; on the negative axis only the imaginary
/// part (the piece the outage and density conversions consume) is supplied,
/// with the real part reported as zero.
inline ApmCurve make_acc_curve_nakagami(double m, double tol = 1e-10) {
  const FadingModel model = FadingModel::nakagami(m);
  ApmCurve c;
  c.real_eval = [model, tol](double gbar) {
    return apm_quadrature(model, AverageSnr(gbar), InstantMeasure::capacity(), tol);
  };
  c.complex_eval = [model, m, tol](Complex z) -> Complex {
    if (z.imag() == 0.0 && z.real() > 0.0) {
      return {apm_quadrature(model, AverageSnr(z.real()), InstantMeasure::capacity(),
                             tol),
              0.0};
    }
    if (z.imag() == 0.0 && z.real() < 0.0)
      return {0.0, acc_imag_neg_nakagami(AverageSnr(-z.real()), m)};
    throw UnsupportedVariantError(
        "nakagami ACC continuation: only real-axis evaluation is supported");
  };
  c.hurst_window = {0.0, 1.0};
  c.label = "nakagami-acc";
  return c;
}

}  // namespace apm
