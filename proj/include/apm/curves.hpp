#pragma once

// Core curve types: Hurst windows (existence intervals for the dilation
// spectrum), average-performance curves over average SNR with optional
// analytic continuation, and integral-relationship kernels.

#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "apm/channels.hpp"
#include "apm/special_functions.hpp"

namespace apm {

/// Open interval (lower, upper) of Hurst exponents for which a curve's
/// dilation spectrum exists. lower >= upper means empty.
struct HurstWindow {
  double lower = 0.0;
  double upper = 0.0;

  bool empty() const { return !(lower < upper); }
  bool contains(double h) const { return lower < h && h < upper; }
};

/// Intersection of two existence windows; empty result means no
/// transform-based relationship links the two curves.
inline HurstWindow hurst_window_intersect(HurstWindow w1, HurstWindow w2) {
  HurstWindow w;
  w.lower = std::max(w1.lower, w2.lower);
  w.upper = std::min(w1.upper, w2.upper);
  if (w.empty()) return {0.0, 0.0};
  return w;
}

/// An average performance measure as a function of average SNR, optionally
/// with an analytic continuation off the positive real axis.
struct ApmCurve {
  std::function<double(double)> real_eval;
  std::function<Complex(Complex)> complex_eval;  // may be empty
  HurstWindow hurst_window;
  std::string label;

  double operator()(double gbar) const {
    if (!real_eval) throw std::logic_error("ApmCurve: no evaluator");
    if (!(gbar > 0.0)) throw std::domain_error("ApmCurve: requires gbar > 0");
    return real_eval(gbar);
  }

  bool has_complex() const { return static_cast<bool>(complex_eval); }

  Complex eval_complex(Complex z) const {
    if (!has_complex())
      throw CapabilityError("ApmCurve '" + label + "' has no analytic continuation");
    return complex_eval(z);
  }
};

/// Weight function Z on (0,inf) relating two average measures through
/// target(gbar) = int_0^inf Z(u) source(u gbar) du.
struct Kernel {
  std::function<double(double)> eval;
  std::string tag;

  double operator()(double u) const {
    if (!(u > 0.0)) throw std::domain_error("Kernel: requires u > 0");
    return eval(u);
  }
};

}  // namespace apm
