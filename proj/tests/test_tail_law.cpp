#include <doctest.h>

#include <cmath>
#include <limits>

#include "rwrc/errors.hpp"
#include "rwrc/quadrature.hpp"
#include "rwrc/random.hpp"
#include "rwrc/tail_law.hpp"
#include "support.hpp"

using namespace rwrc;
using doctest::Approx;

TEST_CASE("cdf values") {
  const TailLaw<double> law(1, 1);
  CHECK(law.cdf(1.0) == Approx(0.36787944117144233).epsilon(1e-15));
  CHECK(law.cdf(0.1) == Approx(4.5399929762484854e-05).epsilon(1e-13));
  CHECK(TailLaw<double>(2, 3).cdf(1e12) == Approx(1.0).epsilon(1e-15));
  CHECK(law.cdf(1e-3) == 0.0);
  CHECK_THROWS_AS(law.cdf(0.0), Error);
  CHECK_THROWS_AS(law.cdf(-1.0), Error);
}

TEST_CASE("log tail is exact") {
  for (double eta : {0.3, 1.0, 2.5}) {
    for (double D : {0.5, 1.0, 3.0}) {
      const TailLaw<double> law(eta, D);
      for (double eps : {1e-4, 0.01, 0.5, 1.0, 7.0, 1e3}) {
        CHECK(law.log_cdf(eps) == Approx(-D * std::pow(eps, -eta)).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("cdf is monotone") {
  const TailLaw<double> law(1.5, 2);
  double prev = 0;
  for (double x = 0.05; x < 50; x *= 1.1) {
    const double c = law.cdf(x);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("quantile values and errors") {
  const TailLaw<double> law(1, 1);
  CHECK(law.quantile(std::exp(-1.0)) == Approx(1.0).epsilon(1e-15));
  CHECK(law.quantile(std::exp(-2.0)) == Approx(0.5).epsilon(1e-15));
  CHECK(TailLaw<double>(2, 1).quantile(std::exp(-4.0)) == Approx(0.5).epsilon(1e-15));
  try {
    law.quantile(0.0);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArgumentOutOfRange);
  }
  CHECK_THROWS_AS(law.quantile(1.0), Error);
  CHECK_THROWS_AS(law.quantile(1.5), Error);
}

TEST_CASE("quantile inverts cdf") {
  for (double eta : {0.5, 1.0, 3.0}) {
    const TailLaw<double> law(eta, 1.7);
    for (double x = 1e-3; x <= 1e3; x *= 1.37) {
      const double u = law.cdf(x);
      if (u <= 0 || u >= 1) continue;  // outside double resolution
      // Rounding u costs a relative error of about eps / (eta |log u|) in x.
      const double cond = std::numeric_limits<double>::epsilon() / (eta * std::abs(std::log(u)));
      CHECK(law.quantile(u) == Approx(x).epsilon(1e-12 + 8 * cond));
    }
  }
}

TEST_CASE("log density values") {
  CHECK(TailLaw<double>(1, 1).log_density(1.0) == Approx(-1.0).epsilon(1e-15));
  CHECK(TailLaw<double>(1, 2).log_density(2.0) == Approx(-std::log(2.0) - 1).epsilon(1e-15));
  try {
    TailLaw<double>(1, 1).log_density(0.0);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveArgument);
  }
}

TEST_CASE("density integrates to one") {
  for (double eta : {0.5, 1.0, 2.0}) {
    for (double D : {0.5, 1.0, 4.0}) {
      const TailLaw<double> law(eta, D);
      // x = e^u, dx = e^u du
      auto h = [&](double u) { return law.log_density(std::exp(u)) + u; };
      CHECK(log_integrate(h, -INFINITY, INFINITY, 0.0) == Approx(0.0).epsilon(1e-8).scale(1.0));
      const double plain = test::simpson([&](double u) { return std::exp(h(u)); }, -20, 200, 200000);
      CHECK(plain == Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("density is the derivative of the cdf") {
  const TailLaw<double> law(1.3, 0.8);
  for (double x : {0.2, 0.7, 1.0, 3.0}) {
    const double h = 1e-6 * x;
    CHECK(law.density(x) == Approx((law.cdf(x + h) - law.cdf(x - h)) / (2 * h)).epsilon(1e-7));
  }
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(TailLaw<double>(0, 1), Error);
  CHECK_THROWS_AS(TailLaw<double>(1, -1), Error);
}

TEST_CASE("sampling") {
  const TailLaw<double> law(1, 1);
  Rng rng(1);
  CHECK(law.sample(rng, 0).empty());

  SUBCASE("binomial check at 0.5") {
    Rng r(2024);
    const std::size_t n = 1000000;
    const auto xs = law.sample(r, n);
    double below = 0;
    for (double x : xs) below += x <= 0.5;
    const double p = std::exp(-2.0);
    CHECK(std::abs(below / n - p) <= 3 * std::sqrt(p * (1 - p) / n));
  }

  SUBCASE("determinism") {
    Rng a(99);
    Rng b(99);
    CHECK(law.sample(a, 100) == law.sample(b, 100));
  }

  SUBCASE("Kolmogorov-Smirnov") {
    for (double eta : {0.5, 1.0, 2.0}) {
      const TailLaw<double> l(eta, 2.0);
      Rng r(7 + static_cast<int>(eta * 10));
      const std::size_t n = 100000;
      const double ks = test::ks_statistic(l.sample(r, n), [&](double x) { return l.cdf(x); });
      CHECK(ks < test::ks_critical_1pct(n));
    }
  }
}

TEST_CASE("median") {
  const TailLaw<double> law(2, 3);
  CHECK(law.cdf(law.median()) == Approx(0.5).epsilon(1e-14));
}

TEST_CASE("long double instantiation") {
  const TailLaw<long double> law(1.0L, 1.0L);
  CHECK(static_cast<double>(law.cdf(1.0L)) == Approx(std::exp(-1.0)));
}
