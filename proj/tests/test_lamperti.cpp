#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "apm/lamperti.hpp"
#include "apm/relationships.hpp"

using namespace apm;

namespace {

ApmCurve rayleigh_acc() { return make_acc_curve_rayleigh(); }

}  // namespace

TEST_CASE("hurst window arithmetic") {
  const HurstWindow acc{0.0, 1.0};
  const HurstWindow acr{0.0, 0.5};
  const HurstWindow comp_op{0.0, std::numeric_limits<double>::infinity()};
  SECTION("known intersections") {
    const HurstWindow w1 = hurst_window_intersect(acc, acr);
    CHECK(w1.lower == 0.0);
    CHECK(w1.upper == 0.5);
    const HurstWindow w2 = hurst_window_intersect(acc, comp_op);
    CHECK(w2.lower == 0.0);
    CHECK(w2.upper == 1.0);
  }
  SECTION("disjoint windows are empty") {
    CHECK(hurst_window_intersect({0.0, 1.0}, {2.0, 3.0}).empty());
  }
  SECTION("commutative and idempotent") {
    for (auto [w1, w2] : {std::pair{acc, acr}, {acr, comp_op}, {acc, comp_op}}) {
      const HurstWindow ab = hurst_window_intersect(w1, w2);
      const HurstWindow ba = hurst_window_intersect(w2, w1);
      CHECK(ab.lower == ba.lower);
      CHECK(ab.upper == ba.upper);
      const HurstWindow aa = hurst_window_intersect(w1, w1);
      CHECK(aa.lower == w1.lower);
      CHECK(aa.upper == w1.upper);
    }
  }
}

TEST_CASE("dilation operators") {
  const ApmCurve acc = rayleigh_acc();
  const AverageSnr g(3.0);
  SECTION("identity dilations") {
    CHECK(lamperti_inverse(acc, 0.7, g, 0.0) == acc(g.value));
    CHECK(dilate(acc, 0.7, g, 1.0) == acc(g.value));
  }
  SECTION("H=0 is a pure exponential shift") {
    CHECK_THAT(lamperti_inverse(acc, 0.0, g, 1.5),
               Catch::Matchers::WithinRel(acc(std::exp(-1.5) * g.value), 1e-14));
  }
  SECTION("direct/inverse transform round trip") {
    // the direct transform evaluates the inverse at lambda = -ln(gbar') and
    // dilates back
    for (double lambda : {-1.0, 0.3, 2.0}) {
      const double inv = lamperti_inverse(acc, 0.5, g, lambda);
      const double back = std::exp(-0.5 * lambda) * inv;
      CHECK_THAT(back, Catch::Matchers::WithinRel(acc(std::exp(-lambda) * g.value),
                                                  1e-12));
    }
  }
  SECTION("closed-form dilation example") {
    CHECK_THAT(dilate(acc, 0.5, AverageSnr(1.0), 2.0),
               Catch::Matchers::WithinRel(std::sqrt(2.0) * acc(2.0), 1e-13));
  }
  SECTION("fractional moments are dilation-invariant at H = -n") {
    const double n = 0.7;
    ApmCurve mom;
    mom.real_eval = [n](double gb) {
      return snr_moment(FadingModel::nakagami(2.0), AverageSnr(gb), n);
    };
    for (double lambda : {0.25, 2.0, 9.0})
      CHECK_THAT(dilate(mom, -n, g, lambda),
                 Catch::Matchers::WithinRel(mom(g.value), 1e-12));
  }
  CHECK_THROWS_AS(dilate(acc, 0.5, g, 0.0), std::domain_error);
}

TEST_CASE("numerical dilation spectrum") {
  const ApmCurve acc = rayleigh_acc();
  SECTION("matches the analytic transform of a truncated power law") {
    // apm(beta) = beta^{-1/2} on (1, 4): integral of beta^{-H-3/2} is
    // elementary
    ApmCurve power;
    power.real_eval = [](double b) {
      return (b > 1.0 && b < 4.0) ? 1.0 / std::sqrt(b) : 0.0;
    };
    power.hurst_window = {-10.0, 10.0};
    const double hurst = 0.25;
    const Complex got = lds_numeric(power, hurst, 0.0, AverageSnr(1.0), 1e-11);
    const double s = hurst + 0.5;  // exponent after combining
    const double exact = (1.0 - std::pow(4.0, -s)) / s;
    CHECK_THAT(got.real(), Catch::Matchers::WithinRel(exact, 1e-7));
    CHECK_THAT(got.imag(), Catch::Matchers::WithinAbs(0.0, 1e-9));
  }
  SECTION("dilation covariance") {
    for (double omega : {0.0, 1.0, 5.0}) {
      const Complex base = lds_numeric(acc, 0.5, omega, AverageSnr(1.0), 1e-12);
      for (double lambda : {0.5, 2.0}) {
        const Complex dilated =
            lds_numeric(acc, 0.5, omega, AverageSnr(lambda), 1e-12);
        const Complex pred =
            std::pow(Complex(lambda, 0.0), Complex(0.5, omega)) * base;
        CHECK(std::abs(dilated - pred) <= 1e-6 * std::abs(dilated));
      }
    }
  }
  SECTION("scale rule between two dilations") {
    const double omega = 1.0;
    const Complex a = lds_numeric(acc, 0.5, omega, AverageSnr(3.0), 1e-12);
    const Complex b = lds_numeric(acc, 0.5, omega, AverageSnr(0.75), 1e-12);
    const Complex pred = std::pow(Complex(4.0, 0.0), Complex(0.5, omega));
    CHECK(std::abs(a / b - pred) < 1e-6 * std::abs(pred));
  }
  SECTION("conjugate symmetry in omega") {
    const Complex plus = lds_numeric(acc, 0.5, 2.0, AverageSnr(1.5), 1e-12);
    const Complex minus = lds_numeric(acc, 0.5, -2.0, AverageSnr(1.5), 1e-12);
    CHECK(std::abs(minus - std::conj(plus)) < 1e-9);
  }
  SECTION("existence and range guards") {
    CHECK_THROWS_AS(lds_numeric(acc, 1.5, 0.0, AverageSnr(1.0), 1e-10),
                    std::domain_error);
    CHECK_THROWS_AS(lds_numeric(acc, 0.5, 11.0, AverageSnr(1.0), 1e-10),
                    std::range_error);
  }
}

TEST_CASE("kernel integrator") {
  const AverageSnr g(10.0);
  SECTION("narrow bump sifts the curve value") {
    const double u0 = 2.0, width = 1e-4;
    Kernel bump;
    bump.eval = [u0, width](double u) {
      return (std::abs(u - u0) < width) ? 1.0 / (2.0 * width) : 0.0;
    };
    ApmCurve curve;
    curve.real_eval = [](double gb) { return std::log1p(gb); };
    const double got = integrate_adaptive(
        [&](double u) { return bump.eval(u) * curve(u * g.value); }, u0 - 2e-4,
        u0 + 2e-4, 1e-10);
    CHECK_THAT(got, Catch::Matchers::WithinRel(std::log1p(u0 * g.value), 1e-6));
  }
  SECTION("log-divergent pairing is detected") {
    Kernel k = kernel_acc_from_reliability(ModulationParams(1.0, 1.0));
    ApmCurve ones;
    ones.real_eval = [](double) { return 1.0; };
    CHECK_THROWS_AS(apply_kernel(k, ones, g, 1e-8), IntegrationError);
  }
  SECTION("reliability kernel reproduces the Rayleigh capacity") {
    const ModulationParams p(1.0, 1.0);
    const Kernel k = kernel_acc_from_reliability(p);
    ApmCurve rel;
    rel.real_eval = [&p](double gb) {
      return 1.0 - 2.0 * aber_closed_rayleigh_wojnar(AverageSnr(gb), p.a, p.b);
    };
    CHECK_THAT(apply_kernel(k, rel, g, 1e-9),
               Catch::Matchers::WithinAbs(2.0146425, 1e-4));
    SECTION("fixed-rule evaluation") {
      const double adaptive = apply_kernel(k, rel, g, 1e-10);
      const double n128 = apply_kernel_gcq(k, rel, g, 128);
      CHECK(std::abs(n128 - adaptive) < 1e-3);
      SECTION("error shrinks as the rule doubles") {
        double prev = 1e9;
        for (int n : {32, 64, 128, 256}) {
          const double err = std::abs(apply_kernel_gcq(k, rel, g, n) - adaptive);
          CHECK(err < prev);
          prev = err;
        }
      }
    }
    SECTION("single-node rule") {
      const double expect = M_PI * M_PI / 2.0 * k.eval(1.0) * rel(g.value);
      CHECK_THAT(apply_kernel_gcq(k, rel, g, 1),
                 Catch::Matchers::WithinRel(expect, 1e-13));
    }
  }
}
