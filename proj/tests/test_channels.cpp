#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "apm/channels.hpp"
#include "apm/quadrature.hpp"

using namespace apm;

TEST_CASE("model construction validation") {
  CHECK_THROWS_AS(FadingModel::nakagami(0.4), std::domain_error);
  CHECK_NOTHROW(FadingModel::nakagami(0.5));
  CHECK_THROWS_AS(FadingModel::generalized_nakagami(2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(FadingModel::cascaded_gnm({}), std::domain_error);
  CHECK_THROWS_AS(AverageSnr(0.0), std::domain_error);
  CHECK_THAT(AverageSnr::from_db(10.0).value, Catch::Matchers::WithinRel(10.0, 1e-14));
  CHECK_THAT(AverageSnr(100.0).db(), Catch::Matchers::WithinAbs(20.0, 1e-12));
}

TEST_CASE("snr density closed forms and normalization") {
  CHECK_THAT(snr_pdf(FadingModel::rayleigh(), AverageSnr(1.0), 1.0),
             Catch::Matchers::WithinRel(std::exp(-1.0), 1e-13));
  CHECK_THAT(snr_pdf(FadingModel::nakagami(2.0), AverageSnr(1.0), 1.0),
             Catch::Matchers::WithinRel(4.0 * std::exp(-2.0), 1e-13));
  SECTION("normalization and CDF consistency") {
    for (const FadingModel& m :
         {FadingModel::rayleigh(), FadingModel::nakagami(3.0),
          FadingModel::generalized_nakagami(2.0, 1.7)}) {
      const AverageSnr g(2.5);
      const double mass =
          integrate_semi_infinite([&](double r) {
            return r > 0.0 ? snr_pdf(m, g, r) : 0.0;
          });
      CHECK_THAT(mass, Catch::Matchers::WithinAbs(1.0, 1e-8));
      for (double r : {0.5, 2.0, 6.0}) {
        const double cdf_num = integrate_adaptive(
            [&](double t) { return t > 0.0 ? snr_pdf(m, g, t) : 0.0; }, 0.0, r,
            1e-11);
        CHECK_THAT(snr_cdf(m, g, r), Catch::Matchers::WithinAbs(cdf_num, 1e-8));
      }
    }
  }
  SECTION("cascaded variant reports no closed density") {
    const FadingModel c = FadingModel::cascaded_gnm({{2.0, 1.0}, {2.0, 1.0}});
    CHECK_THROWS_AS(snr_pdf(c, AverageSnr(1.0), 1.0), UnsupportedVariantError);
    CHECK_THROWS_AS(snr_cdf(c, AverageSnr(1.0), 1.0), UnsupportedVariantError);
  }
}

TEST_CASE("snr distribution function") {
  CHECK(snr_cdf(FadingModel::rayleigh(), AverageSnr(3.0), 0.0) == 0.0);
  CHECK_THAT(snr_cdf(FadingModel::rayleigh(), AverageSnr(2.0), 2.0),
             Catch::Matchers::WithinAbs(1.0 - std::exp(-1.0), 1e-13));
  CHECK_THAT(snr_cdf(FadingModel::nakagami(2.0), AverageSnr(1.0), 1.0),
             Catch::Matchers::WithinAbs(1.0 - 3.0 * std::exp(-2.0), 1e-12));
  SECTION("monotone, tends to one") {
    double prev = -1.0;
    for (double r = 0.0; r < 30.0; r += 0.5) {
      const double v = snr_cdf(FadingModel::nakagami(4.0), AverageSnr(1.0), r);
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(prev > 1.0 - 1e-9);
  }
}

TEST_CASE("snr moments") {
  const AverageSnr g(3.0);
  SECTION("mean normalization across variants") {
    for (const FadingModel& m :
         {FadingModel::rayleigh(), FadingModel::nakagami(2.0),
          FadingModel::generalized_nakagami(2.0, 0.5),
          FadingModel::cascaded_gnm({{2.0, 1.0}, {3.0, 2.0}})})
      CHECK_THAT(snr_moment(m, g, 1.0), Catch::Matchers::WithinRel(g.value, 1e-12));
  }
  CHECK_THAT(snr_moment(FadingModel::rayleigh(), g, 2.0),
             Catch::Matchers::WithinRel(2.0 * g.value * g.value, 1e-12));
  SECTION("dilation scaling") {
    for (double n : {-0.3, 0.5, 2.0}) {
      const double lhs = snr_moment(FadingModel::nakagami(2.0), AverageSnr(6.0), n);
      const double rhs =
          std::pow(2.0, n) * snr_moment(FadingModel::nakagami(2.0), g, n);
      CHECK_THAT(lhs, Catch::Matchers::WithinRel(rhs, 1e-12));
    }
  }
  SECTION("nonexistent moments are refused") {
    CHECK_THROWS_AS(snr_moment(FadingModel::nakagami(0.5), g, -0.5),
                    DivergentMomentError);
    CHECK_THROWS_AS(
        snr_moment(FadingModel::cascaded_gnm({{2.0, 1.0}, {0.5, 0.5}}), g, -0.25),
        DivergentMomentError);
  }
}

TEST_CASE("seeded sampling") {
  const FadingModel ray = FadingModel::rayleigh();
  const AverageSnr g(4.0);
  SECTION("deterministic per seed") {
    const auto a = sample(ray, g, 42, 1000);
    const auto b = sample(ray, g, 42, 1000);
    CHECK(a == b);
    const auto c = sample(ray, g, 43, 1000);
    CHECK(a != c);
  }
  SECTION("prefix stability: longer runs extend shorter ones") {
    const auto a = sample(ray, g, 7, 100);
    const auto b = sample(ray, g, 7, 1000);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
  }
  SECTION("sample mean near the configured average") {
    for (const FadingModel& m :
         {ray, FadingModel::nakagami(2.0),
          FadingModel::cascaded_gnm({{2.0, 1.0}, {2.0, 1.0}})}) {
      const auto draws = sample(m, g, 5, 1000000);
      double sum = 0.0, sq = 0.0;
      for (double d : draws) {
        sum += d;
        sq += d * d;
      }
      const double mean = sum / draws.size();
      const double se = std::sqrt((sq / draws.size() - mean * mean) / draws.size());
      CHECK(std::abs(mean - g.value) < 4.0 * se);
    }
  }
  SECTION("Nakagami m=1 matches Rayleigh distribution (KS test)") {
    const std::size_t n = 100000;
    auto a = sample(FadingModel::nakagami(1.0), g, 11, n);
    auto b = sample(ray, g, 12, n);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < n && j < n) {
      if (a[i] <= b[j]) ++i;
      else ++j;
      d = std::max(d, std::abs(static_cast<double>(i) - static_cast<double>(j)) / n);
    }
    // critical value at alpha = 0.01 for the two-sample statistic
    const double crit = 1.628 * std::sqrt(2.0 / static_cast<double>(n));
    CHECK(d < crit);
  }
  SECTION("Monte-Carlo CDF matches the closed form") {
    for (const FadingModel& m : {ray, FadingModel::nakagami(2.0),
                                 FadingModel::nakagami(4.0)}) {
      const auto draws = sample(m, g, 31, 1000000);
      for (double q : {0.2, 0.5, 1.0, 2.0}) {
        const double thr = q * g.value;
        const double emp =
            static_cast<double>(std::count_if(draws.begin(), draws.end(),
                                              [thr](double v) { return v < thr; })) /
            draws.size();
        const double p = snr_cdf(m, g, thr);
        const double se = std::sqrt(p * (1.0 - p) / draws.size());
        CHECK(std::abs(emp - p) < 3.3 * se);
      }
    }
  }
}

TEST_CASE("closed-form capacity expressions") {
  CHECK_THAT(acc_closed_rayleigh(Complex(10.0, 0.0)).real(),
             Catch::Matchers::WithinAbs(2.0146425, 1e-6));
  CHECK_THAT(acc_closed_rayleigh(Complex(1.0, 0.0)).real(),
             Catch::Matchers::WithinAbs(0.596347, 1e-6));
  CHECK_THROWS_AS(acc_closed_rayleigh(Complex(0.0, 0.0)), std::domain_error);
  SECTION("negative-axis continuation") {
    const Complex v = acc_closed_rayleigh(Complex(-1.0, 0.0));
    CHECK_THAT(v.imag(), Catch::Matchers::WithinAbs(M_PI * std::exp(-1.0), 1e-12));
  }
  SECTION("overflow-safe at extreme arguments") {
    CHECK(std::isfinite(acc_closed_rayleigh(Complex(-1e300, 0.0)).imag()));
    CHECK(std::isfinite(acc_closed_rayleigh(Complex(-1e-300, 0.0)).imag()));
    CHECK(std::isfinite(acc_closed_rayleigh(Complex(1e300, 0.0)).real()));
  }
  SECTION("Nakagami continuation identity") {
    CHECK_THAT(acc_imag_neg_nakagami(AverageSnr(1.0), 1.0),
               Catch::Matchers::WithinAbs(M_PI * std::exp(-1.0), 1e-12));
    CHECK_THAT(acc_imag_neg_nakagami(AverageSnr(1.0), 2.0),
               Catch::Matchers::WithinAbs(M_PI * 3.0 * std::exp(-2.0), 1e-12));
    CHECK_THAT(acc_imag_neg_nakagami(AverageSnr(1e12), 2.0),
               Catch::Matchers::WithinAbs(M_PI, 1e-9));
    // m=1 agrees with the Rayleigh continuation
    for (double g : {0.3, 1.0, 7.0})
      CHECK_THAT(acc_imag_neg_nakagami(AverageSnr(g), 1.0),
                 Catch::Matchers::WithinRel(
                     acc_closed_rayleigh(Complex(-g, 0.0)).imag(), 1e-12));
  }
}

TEST_CASE("closed-form Rayleigh BER") {
  CHECK_THAT(aber_closed_rayleigh_wojnar(AverageSnr(9.0), 1.0, 1.0),
             Catch::Matchers::WithinAbs(0.05, 1e-14));
  CHECK_THAT(aber_closed_rayleigh_wojnar(AverageSnr(1.0), 1.0, 0.5),
             Catch::Matchers::WithinAbs(0.5 - 0.5 * std::sqrt(0.5), 1e-14));
  CHECK_THAT(aber_closed_rayleigh_wojnar(AverageSnr(1e-12), 1.0, 1.0),
             Catch::Matchers::WithinAbs(0.5, 1e-11));
  CHECK_THROWS_AS(aber_closed_rayleigh_wojnar(AverageSnr(1.0), 0.0, 1.0),
                  std::domain_error);
}
