#include <doctest.h>

#include <cmath>

#include "rwrc/errors.hpp"
#include "rwrc/experiments.hpp"
#include "rwrc/rates.hpp"
#include "support.hpp"

using namespace rwrc;
using doctest::Approx;

TEST_CASE("annealed quadrature") {
  const TailLaw<double> law(1, 1);
  const Domain one = test::single_site();
  const auto a0 = annealed_nonexit_quadrature(law, one, 0.0);
  CHECK(a0.estimate == 1.0);
  CHECK(a0.rescaled == 0.0);

  const auto big = annealed_nonexit_quadrature(law, one, 1e8);
  CHECK(big.rescaled == Approx(-4.0).epsilon(0.02));
  CHECK(std::isfinite(big.rescaled));

  double prev_gap = INFINITY;
  for (double t : {1e4, 1e6, 1e8}) {
    const double gap = std::abs(annealed_nonexit_quadrature(law, one, t).rescaled + 4.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }

  // A single site in d = 2 squares the d = 1 value.
  const auto d2 = annealed_nonexit_quadrature(law, test::single_site(2), 50.0);
  CHECK(d2.log_estimate == Approx(2 * annealed_nonexit_quadrature(law, one, 50.0).log_estimate));

  try {
    annealed_nonexit_quadrature(law, test::pair_domain(), 1.0);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedDomain);
  }
}

TEST_CASE("plain Monte Carlo and importance sampling agree") {
  const TailLaw<double> law(1, 1);
  for (const Domain& dom : {test::pair_domain(), Domain::box(1, 1)}) {
    for (double t : {1.0, 10.0}) {
      Rng a = make_stream(17, 0);
      Rng b = make_stream(17, 1);
      const auto mc = annealed_nonexit_mc(law, dom, t, 10000, a);
      const auto is = annealed_nonexit_is(law, dom, t, 10000, 0.5, b);
      CHECK(mc.estimate >= 0);
      CHECK(mc.estimate <= 1);
      CHECK(std::abs(mc.estimate - is.estimate) <= 3 * std::hypot(mc.standard_error, is.standard_error));
      CHECK(is.effective_sample_size >= 10);
      CHECK(std::isfinite(is.rescaled));
    }
  }
}

// At t = 100 the prior-field estimator has an effective sample size of a few
// units out of 10^4: a handful of rare fields carry the whole mean and its
// plug-in SE is not a usable error bar, so this comparison passes or fails
// with the seed. It is run and reported, but does not fail the suite.
TEST_CASE("plain Monte Carlo and importance sampling agree at t = 100" * doctest::may_fail()) {
  const TailLaw<double> law(1, 1);
  Rng a = make_stream(17, 0);
  Rng b = make_stream(17, 1);
  const auto mc = annealed_nonexit_mc(law, test::pair_domain(), 100.0, 10000, a);
  const auto is = annealed_nonexit_is(law, test::pair_domain(), 100.0, 10000, 0.5, b);
  MESSAGE("plain MC effective sample size " << mc.effective_sample_size);
  CHECK(std::abs(mc.estimate - is.estimate) <= 3 * std::hypot(mc.standard_error, is.standard_error));
}

TEST_CASE("importance sampling does not depend on the tilt") {
  const TailLaw<double> law(1, 1);
  const Domain pair = test::pair_domain();
  const auto g = solve_L(pair, 1.0).minimizer;
  Rng a = make_stream(19, 0);
  Rng b = make_stream(19, 1);
  const auto x = annealed_nonexit_is(law, pair, 100.0, 20000, 0.5, a, g);
  const auto y = annealed_nonexit_is(law, pair, 100.0, 20000, 0.4, b, g);
  CHECK(x.effective_sample_size >= 100);
  CHECK(y.effective_sample_size >= 100);
  CHECK(std::abs(x.estimate - y.estimate) <= 3 * std::hypot(x.standard_error, y.standard_error));
}

TEST_CASE("importance sampling against the quadrature oracle") {
  const TailLaw<double> law(1, 1);
  const Domain one = test::single_site();
  Rng rng = make_stream(23, 0);
  const auto is = annealed_nonexit_is(law, one, 1e3, 10000, 0.5, rng);
  const auto q = annealed_nonexit_quadrature(law, one, 1e3);
  CHECK(std::abs(is.estimate - q.estimate) <= 3 * is.standard_error);

  // Other tail parameters, default tilt 1/(1+eta).
  const TailLaw<double> law2(2, 0.5);
  Rng rng2 = make_stream(23, 1);
  const auto is2 = annealed_nonexit_is(law2, one, 200.0, 10000, 1.0 / 3, rng2);
  const auto q2 = annealed_nonexit_quadrature(law2, one, 200.0);
  CHECK(std::abs(is2.estimate - q2.estimate) <= 3 * is2.standard_error);
}

TEST_CASE("importance sampling edge cases") {
  const TailLaw<double> law(1, 1);
  Rng rng(1);
  const auto z = annealed_nonexit_is(law, test::pair_domain(), 0.0, 10, 0.5, rng);
  CHECK(z.estimate == 1.0);
  try {
    annealed_nonexit_is(law, test::single_site(), 1e4, 1000, 0.01, rng);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateWeights);
    CHECK(is_numerical(e.code()));
  }
  CHECK_THROWS_AS(annealed_nonexit_mc(law, test::single_site(), 1.0, 0, rng), Error);
}

TEST_CASE("tilted proposal") {
  const TailLaw<double> law(1, 1);
  const auto g = ProbabilityProfile<double>::uniform(test::pair_domain());
  const FieldProposal q = tilted_proposal(g, law, 100.0, 0.5);
  const Field phi = optimal_profile(g, law, 1.0);
  // Median of the proposal on edge e is scale * median(law) = t^{-r} phi_e.
  CHECK(q.scales(0) * law.median() == Approx(0.1 * phi[0]));
  CHECK(q.scales(2) * law.median() == Approx(0.1 * phi[2]));
  CHECK(q.scales(1) == 1.0);  // capped interior edge keeps the prior

  // The proposal density integrates the sampled fields consistently: for a
  // scale of one it is the prior.
  Rng rng(2);
  const Field f = q.sample(law, rng);
  const double manual = std::log(q.scales(0)) + std::log(q.scales(2));
  CHECK(q.log_density(f, law) + manual ==
        Approx(law.log_density(f[0] / q.scales(0)) + law.log_density(f[1]) + law.log_density(f[2] / q.scales(2))));
}

TEST_CASE("Tauberian check") {
  const TailLaw<double> law(1, 1);
  const std::vector<double> ts{1e4};
  const auto m1 = tauberian_check(law, 1.0, ts);
  CHECK(m1[0].value == Approx(-2.0).epsilon(0.02));
  CHECK(m1[0].target == Approx(-2.0));
  const auto m4 = tauberian_check(law, 4.0, ts);
  CHECK(m4[0].value == Approx(-4.0).epsilon(0.02));
  double prev = -INFINITY;
  for (double M : {1e-2, 1e-6, 1e-10, 1e-14}) {
    const double v = tauberian_check(law, M, ts)[0].value;
    CHECK(v > prev);
    CHECK(v <= 0);
    prev = v;
  }
  CHECK(std::abs(prev) < 1e-5);
  CHECK_THROWS_AS(tauberian_check(law, 0.0, ts), Error);
}

TEST_CASE("LDP point check") {
  const TailLaw<double> law(1, 1);
  const Domain pair = test::pair_domain();
  const auto g = solve_L(pair, 1.0).minimizer;

  SUBCASE("bookkeeping and the lower bound") {
    LdpSettings s;
    s.times = {10.0, 100.0};
    s.deltas = {0.1, 0.2};
    s.fields = 300;
    s.paths = 50;
    Rng rng(5);
    const auto rep = ldp_point_check(law, g, s, rng);
    CHECK(std::abs(rep.minus_j + joint_rate_J(g, law)) <= 1e-12);
    REQUIRE(rep.rows.size() == 4);
    for (const auto& r : rep.rows) {
      CHECK(std::isfinite(r.rescaled));
      CHECK(r.lower_bound_ok);
    }
  }

  SUBCASE("a ball covering the simplex reproduces the annealed estimate") {
    LdpSettings s;
    s.times = {50.0};
    s.deltas = {2.0};
    s.fields = 2000;
    s.r = 0.5;
    Rng a(8);
    Rng b(8);
    const auto rep = ldp_point_check(law, g, s, a);
    const auto ann = annealed_nonexit_is(law, pair, 50.0, 2000, 0.5, b, g);
    CHECK(rep.rows[0].estimate == Approx(ann.estimate).epsilon(1e-12));
  }

  SUBCASE("trend toward -J at the minimizer") {
    LdpSettings s;
    s.times = {10.0, 100.0, 1000.0};
    s.deltas = {2.0};
    s.fields = 4000;
    Rng rng(9);
    const auto rep = ldp_point_check(law, g, s, rng);
    double prev = INFINITY;
    for (const auto& r : rep.rows) {
      const double gap = std::abs(r.rescaled - rep.minus_j);
      CHECK(gap < prev);
      prev = gap;
    }
  }

  SUBCASE("single site: the occupation measure is always the point mass") {
    LdpSettings s;
    s.times = {20.0};
    s.deltas = {0.05, 2.0};
    s.fields = 500;
    s.paths = 5;
    Rng rng(10);
    const auto g0 = ProbabilityProfile<double>::origin_mass(test::single_site());
    const auto rep = ldp_point_check(law, g0, s, rng);
    CHECK(rep.rows[0].estimate == Approx(rep.rows[1].estimate).epsilon(1e-12));
  }
}

TEST_CASE("Girsanov check") {
  Rng rng(11);
  const Domain pair = test::pair_domain();
  const Field psi = Field::constant(pair, 1.0);
  const Field phi = uniform_field(pair, 0.5, 2.0, rng);
  const Field chi = uniform_field(pair, 0.5, 2.0, rng);
  for (int e = 0; e < phi.size(); ++e) {
    CHECK(phi[e] >= 0.5);
    CHECK(phi[e] <= 2.0);
  }
  const auto r = girsanov_check(phi, psi, chi, pair, 1.0, 20000, rng);
  CHECK(std::abs(r.mean - 1.0) <= 3 * r.standard_error);
  CHECK(r.cocycle_error <= 1e-12);
  CHECK(r.antisymmetry_error <= 1e-12);
  CHECK(r.paths == 20000);
}
