#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include "apm/measures.hpp"

using namespace apm;

TEST_CASE("instantaneous measures") {
  CHECK_THAT(eval_instant(InstantMeasure::capacity(), std::exp(1.0) - 1.0),
             Catch::Matchers::WithinAbs(1.0, 1e-14));
  CHECK(eval_instant(InstantMeasure::capacity(), 0.0) == 0.0);
  CHECK(eval_instant(InstantMeasure::wojnar_ber(1.0, 1.0), 0.0) == 0.5);
  SECTION("outage indicator is 1/2 at exact equality") {
    const InstantMeasure m = InstantMeasure::outage_indicator(2.0);
    CHECK(eval_instant(m, 1.0) == 1.0);
    CHECK(eval_instant(m, 2.0) == 0.5);
    CHECK(eval_instant(m, 3.0) == 0.0);
  }
  SECTION("reliability is 1 - 2 BER pointwise") {
    for (double g = 0.0; g < 20.0; g += 0.7) {
      for (auto [a, b] : {std::pair{1.0, 1.0}, {0.5, 0.5}, {1.0, 0.5}, {2.0, 3.0}}) {
        const double e = eval_instant(InstantMeasure::wojnar_ber(a, b), g);
        const double q = eval_instant(InstantMeasure::reliability(a, b), g);
        CHECK_THAT(q, Catch::Matchers::WithinAbs(1.0 - 2.0 * e, 1e-15));
        CHECK(e > 0.0);
        CHECK(e <= 0.5);
      }
    }
  }
  SECTION("general-b BER matches the two short-circuited laws") {
    for (double g : {0.1, 1.0, 4.0, 25.0}) {
      CHECK_THAT(eval_instant(InstantMeasure::wojnar_ber(1.0, 1.0), g),
                 Catch::Matchers::WithinAbs(0.5 * reg_upper_gamma(1.0, g), 1e-13));
      CHECK_THAT(eval_instant(InstantMeasure::wojnar_ber(1.0, 0.5), g),
                 Catch::Matchers::WithinAbs(0.5 * reg_upper_gamma(0.5, g), 1e-13));
    }
  }
  CHECK_THROWS_AS(eval_instant(InstantMeasure::capacity(), -1.0), std::domain_error);
  CHECK_THROWS_AS(InstantMeasure::wojnar_ber(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(InstantMeasure::outage_indicator(0.0), std::domain_error);
}

TEST_CASE("quadrature averaging oracle") {
  const AverageSnr g(10.0);
  CHECK_THAT(apm_quadrature(FadingModel::rayleigh(), g, InstantMeasure::capacity(),
                            1e-10),
             Catch::Matchers::WithinAbs(2.0146425, 1e-6));
  CHECK_THAT(apm_quadrature(FadingModel::rayleigh(), AverageSnr(9.0),
                            InstantMeasure::wojnar_ber(1.0, 1.0), 1e-10),
             Catch::Matchers::WithinAbs(0.05, 1e-9));
  SECTION("outage averaging equals the distribution function") {
    for (const FadingModel& m : {FadingModel::rayleigh(), FadingModel::nakagami(2.0),
                                 FadingModel::generalized_nakagami(2.0, 2.0)}) {
      for (double q : {0.3, 1.0, 4.0}) {
        const double got = apm_quadrature(
            m, g, InstantMeasure::outage_indicator(q * g.value), 1e-10);
        CHECK_THAT(got, Catch::Matchers::WithinAbs(snr_cdf(m, g, q * g.value), 1e-8));
      }
    }
  }
  SECTION("monotonicity transfer in average SNR") {
    double prev_acc = -1.0, prev_ber = 2.0;
    for (double gb : {0.5, 1.0, 3.0, 10.0, 40.0}) {
      const double acc = apm_quadrature(FadingModel::nakagami(2.0), AverageSnr(gb),
                                        InstantMeasure::capacity(), 1e-9);
      const double ber = apm_quadrature(FadingModel::nakagami(2.0), AverageSnr(gb),
                                        InstantMeasure::wojnar_ber(1.0, 1.0), 1e-9);
      CHECK(acc >= prev_acc);
      CHECK(ber <= prev_ber);
      prev_acc = acc;
      prev_ber = ber;
    }
  }
  SECTION("unsupported density propagates") {
    CHECK_THROWS_AS(
        apm_quadrature(FadingModel::cascaded_gnm({{2.0, 1.0}, {2.0, 1.0}}), g,
                       InstantMeasure::capacity(), 1e-8),
        UnsupportedVariantError);
  }
}

TEST_CASE("Monte-Carlo averaging oracle") {
  const AverageSnr g(10.0);
  SECTION("agrees with the closed form within standard errors") {
    const auto r = apm_monte_carlo(FadingModel::rayleigh(), g,
                                   InstantMeasure::capacity(), 1000000, 3);
    CHECK(std::abs(r.mean - 2.0146425) < 3.3 * r.stderr_);
    CHECK(r.stderr_ > 0.0);
  }
  SECTION("constant measure has zero spread") {
    // an outage indicator with a threshold far above any draw is constant 1
    const auto r = apm_monte_carlo(FadingModel::rayleigh(), AverageSnr(1e-6),
                                   InstantMeasure::outage_indicator(1e9), 100, 5);
    CHECK(r.mean == 1.0);
    CHECK(r.stderr_ == 0.0);
  }
  SECTION("reproducible per seed, seed-sensitive") {
    const FadingModel c = FadingModel::cascaded_gnm({{2.0, 1.0}, {2.0, 1.0}});
    const auto r1 = apm_monte_carlo(c, g, InstantMeasure::capacity(), 200000, 9);
    const auto r2 = apm_monte_carlo(c, g, InstantMeasure::capacity(), 200000, 9);
    CHECK(r1.mean == r2.mean);
    CHECK(r1.stderr_ == r2.stderr_);
    CHECK(std::isfinite(r1.mean));
    const auto r3 = apm_monte_carlo(c, g, InstantMeasure::capacity(), 200000, 10);
    CHECK(r1.mean != r3.mean);
    CHECK(std::abs(r1.mean - r3.mean) < 4.0 * std::hypot(r1.stderr_, r3.stderr_));
  }
  SECTION("independent of worker count") {
    setenv("APM_BRIDGE_THREADS", "1", 1);
    const auto one = apm_monte_carlo(FadingModel::nakagami(2.0), g,
                                     InstantMeasure::capacity(), 300000, 17);
    setenv("APM_BRIDGE_THREADS", "7", 1);
    const auto many = apm_monte_carlo(FadingModel::nakagami(2.0), g,
                                      InstantMeasure::capacity(), 300000, 17);
    unsetenv("APM_BRIDGE_THREADS");
    CHECK(one.mean == many.mean);
    CHECK(one.stderr_ == many.stderr_);
  }
  CHECK_THROWS_AS(apm_monte_carlo(FadingModel::rayleigh(), g,
                                  InstantMeasure::capacity(), 1, 1),
                  std::domain_error);
}

TEST_CASE("bit-level error simulation") {
  SECTION("dissipated channel errs half the time") {
    const auto r = simulate_bit_errors(FadingModel::rayleigh(), AverageSnr(1e-9),
                                       1.0, 1.0, 200000, 8);
    CHECK(std::abs(r.mean - 0.5) < 3.3 * r.stderr_);
  }
  SECTION("matches the closed form at moderate SNR") {
    const auto r = simulate_bit_errors(FadingModel::rayleigh(), AverageSnr(9.0), 1.0,
                                       1.0, 10000000, 21);
    CHECK(std::abs(r.mean - 0.05) < 3.3 * r.stderr_);
  }
  SECTION("error fraction bookkeeping") {
    // 5 errors in a million bits reads back as exactly 5e-6
    const auto r = simulate_bit_errors(FadingModel::rayleigh(), AverageSnr(1e6), 1.0,
                                       1.0, 1000000, 13);
    const double count = r.mean * 1000000.0;
    CHECK_THAT(count, Catch::Matchers::WithinAbs(std::round(count), 1e-6));
  }
  CHECK_THROWS_AS(simulate_bit_errors(FadingModel::rayleigh(), AverageSnr(1.0), 1.0,
                                      1.0, 0, 1),
                  std::domain_error);
}
