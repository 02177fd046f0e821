#include <doctest.h>

#include <cmath>

#include "rwrc/errors.hpp"
#include "rwrc/quadrature.hpp"
#include "support.hpp"

using namespace rwrc;
using doctest::Approx;

namespace {

// For eta = 1, D = 1: <e^{-s w}> = 2 sqrt(s) K_1(2 sqrt(s)).
double log_lt_bessel(double s) {
  const double z = 2 * std::sqrt(s);
  if (z < 500) return std::log(z * std::cyl_bessel_k(1.0, z));
  // Hankel expansion of K_1 for large argument.
  const double series = 1 + 3 / (8 * z) - 15 / (128 * z * z) + 315 / (3072 * z * z * z);
  return std::log(z) - z + 0.5 * std::log(M_PI / (2 * z)) + std::log(series);
}

}  // namespace

TEST_CASE("log_integrate on Gaussians") {
  auto gauss = [](double mu, double offset) {
    return [=](double x) { return offset - 0.5 * (x - mu) * (x - mu); };
  };
  const double log_root = 0.5 * std::log(2 * M_PI);
  CHECK(log_integrate(gauss(0, 0), -INFINITY, INFINITY, 0.0) == Approx(log_root).epsilon(1e-12));
  // Far-off hint and a peak value that would overflow exp().
  CHECK(log_integrate(gauss(30, 1e4), -INFINITY, INFINITY, -5.0) == Approx(1e4 + log_root).epsilon(1e-14));
  CHECK(log_integrate(gauss(0, -1e4), -INFINITY, INFINITY, 3.0) == Approx(-1e4 + log_root).epsilon(1e-14));
  // Half line: half the mass.
  CHECK(log_integrate(gauss(0, 0), 0.0, INFINITY, 1.0) == Approx(log_root - std::log(2.0)).epsilon(1e-12));
  // Monotone integrand on a finite interval: int_0^1 e^x dx = e - 1.
  CHECK(log_integrate([](double x) { return x; }, 0.0, 1.0, 0.5) == Approx(std::log(M_E - 1)).epsilon(1e-12));
}

TEST_CASE("Laplace transform against the Bessel closed form") {
  const TailLaw<double> law(1, 1);
  CHECK(log_laplace_transform(law, 0.0) == 0.0);
  for (double s : {1e-4, 1e-2, 1.0, 10.0, 100.0, 1e4, 1e6, 1e8, 1e10}) {
    const double got = log_laplace_transform(law, s);
    const double want = log_lt_bessel(s);
    CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
  }
  CHECK_THROWS_AS(log_laplace_transform(law, -1.0), Error);
}

TEST_CASE("Laplace transform against Simpson for other laws") {
  for (double eta : {0.5, 2.0}) {
    for (double D : {0.7, 2.0}) {
      const TailLaw<double> law(eta, D);
      for (double s : {0.1, 1.0, 5.0}) {
        auto integrand = [&](double u) {
          const double w = std::exp(u);
          return std::exp(law.log_density(w) + u - s * w);
        };
        const double plain = test::simpson(integrand, -15, 15, 400000);
        CHECK(log_laplace_transform(law, s) == Approx(std::log(plain)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("Laplace transform is decreasing in s") {
  const TailLaw<double> law(1.5, 0.8);
  double prev = 0;
  for (double s = 0.01; s < 1e7; s *= 3) {
    const double v = log_laplace_transform(law, s);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("tail of a sum of two weights") {
  const TailLaw<double> law(1, 1);
  for (double eps : {0.5, 1.0, 3.0}) {
    const double plain =
        test::simpson([&](double x) { return x <= 0 || x >= eps ? 0.0 : law.cdf(eps - x) * law.density(x); }, 0,
                      eps, 200000);
    CHECK(log_sum_cdf(law, eps) == Approx(std::log(plain)).epsilon(1e-8));
  }
  // Both weights below eps/2 is a sub-event; w1 + w2 <= eps implies both <= eps.
  for (double eps : {0.01, 0.1, 1.0}) {
    const double v = log_sum_cdf(law, eps);
    CHECK(v >= 2 * law.log_cdf(eps / 2) - 1e-9);
    CHECK(v <= 2 * law.log_cdf(eps) + 1e-9);
  }
  CHECK_THROWS_AS(log_sum_cdf(law, 0.0), Error);
}
