#pragma once

// End-to-end acceptance checks covering every conversion path against its
// closed-form or Monte-Carlo ground truth. Shared by the standalone
// acceptance binary and the CLI selftest subcommand.

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "apm/channels.hpp"
#include "apm/curves.hpp"
#include "apm/empirical.hpp"
#include "apm/lamperti.hpp"
#include "apm/measures.hpp"
#include "apm/relationships.hpp"
#include "apm/special_functions.hpp"

namespace apm {

struct SelfTestResult {
  std::string name;
  bool passed;
  std::string detail;
};

namespace selftest_detail {

inline std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

struct Check {
  bool ok = true;
  double worst = 0.0;

  void track(double err, double limit) {
    if (err > worst) worst = err;
    if (!(err < limit)) ok = false;
  }
};

// 1: capacity from closed-form BER across the four modulation pairs.
inline SelfTestResult check_acc_from_aber() {
  Check c;
  const double pairs[4][2] = {{0.5, 0.5}, {0.5, 1.0}, {1.0, 0.5}, {1.0, 1.0}};
  for (double gbar : {1.0, 10.0, 100.0}) {
    const double exact = expx_e1(1.0 / gbar);
    double lo = 1e300, hi = -1e300;
    for (const auto& ab : pairs) {
      ModulationParams p(ab[0], ab[1]);
      ApmCurve aber;
      aber.real_eval = [&p](double g) {
        return aber_closed_rayleigh_wojnar(AverageSnr(g), p.a, p.b);
      };
      const double v = acc_from_aber(aber, p, AverageSnr(gbar), 1e-6);
      c.track(std::abs(v - exact) / exact, 1e-3);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    c.track((hi - lo) / exact, 1e-3);
  }
  return {"capacity-from-ber round trip", c.ok,
          "worst relative deviation " + fmt(c.worst)};
}

// 2: outage probability from the continued capacity vs the gamma CDF.
inline SelfTestResult check_op() {
  Check c;
  for (double m : {1.0, 2.0, 4.0}) {
    const ApmCurve acc =
        m == 1.0 ? make_acc_curve_rayleigh() : make_acc_curve_nakagami(m);
    for (double gbar : {1.0, 10.0}) {
      for (double ratio : {0.1, 1.0, 10.0}) {
        const double gth = ratio * gbar;
        const double exact = 1.0 - reg_upper_gamma(m, m * gth / gbar);
        const double got = op_from_acc(acc, AverageSnr(gbar), gth, 1e-4);
        c.track(std::abs(got - exact), 1e-3);
      }
    }
  }
  return {"outage probability from capacity", c.ok,
          "worst absolute deviation " + fmt(c.worst)};
}

// 3: outage capacity delegates to outage probability bit-for-bit.
inline SelfTestResult check_oc() {
  const ApmCurve acc = make_acc_curve_rayleigh();
  bool ok = true;
  for (int i = 1; i <= 20; ++i) {
    const double cth = 0.25 * i;
    const double oc = oc_from_acc(acc, AverageSnr(10.0), cth);
    const double op = op_from_acc(acc, AverageSnr(10.0), std::expm1(cth));
    if (oc != op) ok = false;
  }
  return {"outage capacity delegation", ok, ok ? "bit-exact on 20 thresholds"
                                              : "mismatch found"};
}

// 4: SNR density recovered from capacity vs the gamma density.
inline SelfTestResult check_pdf() {
  Check c;
  double norm_worst = 0.0;
  for (double m : {1.0, 2.0, 4.0}) {
    const ApmCurve acc =
        m == 1.0 ? make_acc_curve_rayleigh() : make_acc_curve_nakagami(m);
    const FadingModel model =
        m == 1.0 ? FadingModel::rayleigh() : FadingModel::nakagami(m);
    const double gbar = 1.0;
    for (int i = 0; i <= 60; ++i) {
      const double r = 0.05 * gbar * std::pow(200.0, i / 60.0);
      const double got = pdf_from_acc(acc, AverageSnr(gbar), r);
      const double exact = snr_pdf(model, AverageSnr(gbar), r);
      c.track(std::abs(got - exact), 1e-3);
    }
    const double mass = integrate_adaptive(
        [&](double r) {
          return r > 0.0 ? pdf_from_acc(acc, AverageSnr(gbar), r) : 0.0;
        },
        1e-8, 40.0 * gbar, 1e-5);
    norm_worst = std::max(norm_worst, std::abs(mass - 1.0));
    if (!(std::abs(mass - 1.0) < 1e-3)) c.ok = false;
  }
  return {"density recovery from capacity", c.ok,
          "sup error " + fmt(c.worst) + ", normalization off by " +
              fmt(norm_worst)};
}

// 5: general averaging from capacity reproduces the closed-form BER.
inline SelfTestResult check_apm_from_acc() {
  Check c;
  const ApmCurve acc = make_acc_curve_rayleigh();
  for (double gbar : {1.0, 9.0, 99.0}) {
    const double exact = 0.5 - 0.5 * gbar / (1.0 + gbar);
    const double got =
        apm_from_acc(acc, InstantMeasure::wojnar_ber(1.0, 1.0), AverageSnr(gbar), 1e-8);
    c.track(std::abs(got - exact), 1e-3);
  }
  return {"general measure from capacity", c.ok,
          "worst absolute deviation " + fmt(c.worst)};
}

// 6: interpolation-based capacity prediction at full grid scale.
inline SelfTestResult check_ibp() {
  const ModulationParams p(1.0, 1.0);
  const auto grid = make_grid(201, 100.0);
  MeasurementSet exact_set;
  exact_set.modulation = p;
  for (double db : grid) {
    MeasurementPoint pt;
    pt.snr_db = db;
    pt.value = aber_closed_rayleigh_wojnar(AverageSnr::from_db(db), p.a, p.b);
    exact_set.points.push_back(pt);
  }
  Check c;
  for (int i = 0; i < 9; ++i) {
    const double db = -10.0 + 5.0 * i;
    const AverageSnr g = AverageSnr::from_db(db);
    const double exact = expx_e1(1.0 / g.value);
    const double got = ibp_acc(exact_set, g, 1e-6);
    c.track(std::abs(got - exact) / exact, 1e-2);
  }
  const double exact_err = c.worst;

  const MeasurementSet mc_set = measure_aber_campaign(
      FadingModel::rayleigh(), grid, p, 1000000, 20240817);
  Check cm;
  for (int i = 0; i < 9; ++i) {
    const double db = -10.0 + 5.0 * i;
    const AverageSnr g = AverageSnr::from_db(db);
    const double exact = expx_e1(1.0 / g.value);
    const double got = ibp_acc(mc_set, g, 1e-6);
    cm.track(std::abs(got - exact) / exact, 3e-2);
  }
  const bool ok = c.ok && cm.ok;
  return {"interpolated capacity prediction", ok,
          "exact-set error " + fmt(exact_err) + ", campaign error " +
              fmt(cm.worst)};
}

// 7: fixed-rule kernel quadrature convergence. The non-coherent kernel
// checks agreement with adaptive quadrature; the coherent kernel, whose rule
// error is an order of magnitude smaller, checks doubling stability.
inline SelfTestResult check_gcq() {
  const AverageSnr g(10.0);
  auto run = [&g](double a, double b, double& adaptive, double& n64, double& n128) {
    const ModulationParams p(a, b);
    const Kernel k = kernel_acc_from_reliability(p);
    ApmCurve rel;
    rel.real_eval = [&p](double gb) {
      return 1.0 - 2.0 * aber_closed_rayleigh_wojnar(AverageSnr(gb), p.a, p.b);
    };
    adaptive = apply_kernel(k, rel, g, 1e-10);
    n64 = apply_kernel_gcq(k, rel, g, 64);
    n128 = apply_kernel_gcq(k, rel, g, 128);
  };
  double nc_ad, nc_64, nc_128, co_ad, co_64, co_128;
  run(1.0, 1.0, nc_ad, nc_64, nc_128);
  run(1.0, 0.5, co_ad, co_64, co_128);
  const bool ok = std::abs(nc_128 - nc_ad) < 1e-3 &&
                  std::abs(co_128 - co_ad) < 1e-3 &&
                  std::abs(co_128 - co_64) < 1e-4;
  return {"fixed-rule kernel convergence", ok,
          "|N128-adaptive|=" + fmt(std::abs(nc_128 - nc_ad)) +
              ", coherent |N128-N64|=" + fmt(std::abs(co_128 - co_64))};
}

// 8: dilation covariance of the numerical dilation spectrum.
inline SelfTestResult check_lds() {
  const ApmCurve acc = make_acc_curve_rayleigh();
  const double hurst = 0.5;
  Check c;
  for (double omega : {0.0, 1.0, 5.0}) {
    const Complex base = lds_numeric(acc, hurst, omega, AverageSnr(1.0), 1e-12);
    for (double lambda : {0.5, 2.0}) {
      const Complex dilated =
          lds_numeric(acc, hurst, omega, AverageSnr(lambda), 1e-12);
      const Complex predicted =
          std::pow(Complex(lambda, 0.0), Complex(hurst, omega)) * base;
      c.track(std::abs(dilated - predicted) / std::abs(dilated), 1e-6);
    }
  }
  return {"dilation-spectrum covariance", c.ok,
          "worst relative deviation " + fmt(c.worst)};
}

// 9: Monte-Carlo oracle agrees with quadrature / closed forms.
inline SelfTestResult check_oracles() {
  struct Case {
    FadingModel model;
    InstantMeasure measure;
    double gbar;
  };
  const std::vector<Case> cases = {
      {FadingModel::rayleigh(), InstantMeasure::capacity(), 10.0},
      {FadingModel::rayleigh(), InstantMeasure::capacity(), 1.0},
      {FadingModel::rayleigh(), InstantMeasure::wojnar_ber(1.0, 1.0), 9.0},
      {FadingModel::rayleigh(), InstantMeasure::wojnar_ber(1.0, 0.5), 1.0},
      {FadingModel::rayleigh(), InstantMeasure::outage_indicator(10.0), 10.0},
      {FadingModel::nakagami(2.0), InstantMeasure::capacity(), 10.0},
      {FadingModel::nakagami(2.0), InstantMeasure::wojnar_ber(0.5, 1.0), 5.0},
      {FadingModel::nakagami(2.0), InstantMeasure::outage_indicator(1.0), 10.0},
      {FadingModel::nakagami(4.0), InstantMeasure::capacity(), 3.0},
      {FadingModel::generalized_nakagami(2.0, 2.0), InstantMeasure::capacity(), 10.0},
      {FadingModel::generalized_nakagami(1.0, 0.5),
       InstantMeasure::wojnar_ber(1.0, 1.0), 10.0}};
  Check c;
  int idx = 0;
  for (const auto& cs : cases) {
    const auto mc = apm_monte_carlo(cs.model, AverageSnr(cs.gbar), cs.measure,
                                    1000000, 7000 + idx++);
    const double exact =
        apm_quadrature(cs.model, AverageSnr(cs.gbar), cs.measure, 1e-10);
    const double se = std::max(mc.stderr_, 1e-12);
    c.track(std::abs(mc.mean - exact) / se, 3.3);
  }
  // 12th combination: cascaded capacity via two-seed self-consistency
  const FadingModel casc = FadingModel::cascaded_gnm({{2.0, 1.0}, {2.0, 1.0}});
  const auto mc1 =
      apm_monte_carlo(casc, AverageSnr(10.0), InstantMeasure::capacity(), 1000000, 11);
  const auto mc2 =
      apm_monte_carlo(casc, AverageSnr(10.0), InstantMeasure::capacity(), 1000000, 12);
  const double se12 = std::hypot(mc1.stderr_, mc2.stderr_);
  c.track(std::abs(mc1.mean - mc2.mean) / se12, 4.0);
  return {"sampling oracle coherence", c.ok,
          "worst deviation " + fmt(c.worst) + " standard errors"};
}

// 10: two-hop cascaded channel, measured-BER capacity vs sampled capacity.
inline SelfTestResult check_cascaded() {
  const FadingModel casc = FadingModel::cascaded_gnm({{2.0, 1.0}, {2.0, 1.0}});
  const ModulationParams p(1.0, 1.0);
  const auto grid = make_grid(41, 40.0);
  const MeasurementSet set = measure_aber_campaign(casc, grid, p, 1000000, 4242);
  const AverageSnr g(10.0);
  const double via_ber = ibp_acc(set, g, 1e-6);
  const auto mc =
      apm_monte_carlo(casc, g, InstantMeasure::capacity(), 1000000, 4343);
  const double rel = std::abs(via_ber - mc.mean) / mc.mean;
  return {"cascaded-channel consistency", rel < 0.02,
          "relative deviation " + fmt(rel)};
}

// 11: high-SNR log-linearity of capacity vs log-BER.
inline SelfTestResult check_high_snr() {
  const double gbar = 1e4;
  const double acc = expx_e1(1.0 / gbar);
  const double aber = aber_closed_rayleigh_wojnar(AverageSnr(gbar), 1.0, 1.0);
  const double resid = std::abs(acc + std::log(2.0 * aber) + 0.577216);
  return {"high-snr log-linearity", resid < 0.01, "residual " + fmt(resid)};
}

// 12: special-function regression against independent oracles.
inline SelfTestResult check_special_functions() {
  Check c;
  c.track(std::abs(ln_gamma(0.5) - 0.5 * std::log(M_PI)), 1e-12);
  c.track(std::abs(reg_upper_gamma(0.5, 1.0) - std::erfc(1.0)), 1e-12);
  // Dawson at 1 vs adaptive quadrature of the defining integral
  const double dawson_ref =
      std::exp(-1.0) * integrate_adaptive([](double t) { return std::exp(t * t); },
                                          0.0, 1.0, 1e-13);
  c.track(std::abs(dawson(1.0) - dawson_ref), 1e-12);
  // large-argument asymptote 1/(2x) + 1/(4x^3) + 3/(8x^5)
  const double x50 = 50.0;
  const double asym = 0.5 / x50 + 0.25 / (x50 * x50 * x50) +
                      0.375 / std::pow(x50, 5.0);
  c.track(std::abs(dawson(x50) / asym - 1.0), 1e-6);
  // E1 via its series oracle
  auto e1_series_oracle = [](double x) {
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= -x / k;
      sum += term / k;
    }
    return -euler_gamma - std::log(x) - sum;
  };
  c.track(std::abs(e1_real(1.0) - e1_series_oracle(1.0)), 1e-13);
  c.track(std::abs(e1_real(0.1) - e1_series_oracle(0.1)), 1e-13);
  const Complex on_cut = e1_complex(Complex(-1.0, 0.0));
  c.track(std::abs(on_cut.real() + 1.8951178163559368), 1e-10);
  c.track(std::abs(on_cut.imag() - M_PI), 1e-14);
  c.track(std::abs(kummer_1f1_one(1.0, 2.0) - std::exp(-2.0)), 1e-12);
  c.track(std::abs(kummer_1f1_one(0.5, 1.0) - (1.0 - 2.0 * dawson(1.0))), 1e-10);
  const QuadratureRule r1 = gcq_rule(1);
  c.track(std::abs(r1.nodes[0] - 1.0), 1e-14);
  c.track(std::abs(r1.weights[0] - M_PI * M_PI / 2.0), 1e-12);
  c.track(std::abs(integrate_semi_infinite([](double u) {
            return std::exp(-u) / std::sqrt(u);
          }) - std::sqrt(M_PI)),
          1e-9);
  return {"special-function regression", c.ok, "worst deviation " + fmt(c.worst)};
}

}  // namespace selftest_detail

/// Runs every acceptance check; each entry reports pass/fail and a numeric
/// summary of how close the computation came to its ground truth.
inline std::vector<SelfTestResult> run_selftests() {
  using namespace selftest_detail;
  return {check_special_functions(), check_acc_from_aber(), check_op(), check_oc(),
          check_pdf(), check_apm_from_acc(), check_ibp(), check_gcq(), check_lds(),
          check_oracles(), check_cascaded(), check_high_snr()};
}

}  // namespace apm
