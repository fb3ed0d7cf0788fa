#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "fom/model.hpp"

using namespace fom;

TEST_SUITE("model") {
  TEST_CASE("beverton-holt values and derivatives") {
    const auto f = GrowthFunction::beverton_holt(1.7, 1.0);
    CHECK(f(0.0) == 0.0);
    CHECK(f(1.0) == doctest::Approx(0.85));
    CHECK(f.derivative_at_zero() == doctest::Approx(1.7));
    const double h = 1e-6;
    CHECK(f.derivative(2.0) == doctest::Approx((f(2.0 + h) - f(2.0 - h)) / (2 * h)).epsilon(1e-8));
  }

  TEST_CASE("impulse kinds") {
    const auto id = ImpulseFunction::identity();
    const auto lin = ImpulseFunction::linear(0.3);
    const auto sat = ImpulseFunction::saturating(4.0, 10.0);
    CHECK(id(2.5) == 2.5);
    CHECK(lin(2.0) == doctest::Approx(0.6));
    CHECK(sat(10.0) == doctest::Approx(2.0));
    CHECK(sat.derivative_at_zero() == doctest::Approx(0.4));
    CHECK(lin.derivative_at_zero() == doctest::Approx(0.3));
  }

  TEST_CASE("all experiment parameter sets satisfy the structural assumptions") {
    for (const auto& p : {fixture::monotonicity(), fixture::impulse_identity(),
                          fixture::impulse_saturating(), fixture::dry_length(3.0),
                          fixture::dry_length(4.7)}) {
      const auto rep = validate_assumptions(p);
      INFO(rep.summary());
      CHECK(rep.ok());
    }
  }

  TEST_CASE("validation pinpoints the first violating sample") {
    ModelParams p;
    // f(u)/u increasing: violates the ratio condition everywhere.
    p.growth = GrowthFunction::custom([](double u) { return u + u * u; }, 1.0, "convex");
    const auto rep = validate_assumptions(p);
    CHECK_FALSE(rep.ok());
    const auto* c = rep.find("F.ratio_decreasing");
    REQUIRE(c != nullptr);
    CHECK_FALSE(c->passed);
    CHECK(c->first_violation.has_value());

    ModelParams q;
    q.tau = q.T;
    CHECK_FALSE(validate_assumptions(q).find("season")->passed);
    q = ModelParams{};
    q.a11 = -1.0;
    CHECK_FALSE(validate_assumptions(q).find("coefficients")->passed);
  }

  TEST_CASE("impulse above the identity is rejected") {
    ModelParams p;
    p.impulse = ImpulseFunction::linear(1.5);
    CHECK_FALSE(validate_assumptions(p).find("H.ratio_bounds")->passed);
  }

  TEST_CASE("initial data checks") {
    const ModelParams p;
    CHECK(validate_initial_data(p, fixture::initial()).ok());
    InitialData bad = fixture::initial();
    bad.u0 = [](double) { return 0.1; };
    CHECK_FALSE(validate_initial_data(p, bad).ok());
  }

  TEST_CASE("a-priori bounds dominate the equilibrium and the data") {
    const ModelParams p;
    const auto b = compute_bounds(p, fixture::initial());
    const double us = positive_equilibrium(p);
    // u* solves f(u)/u = a11 a22 / a12 for Beverton-Holt: m/(a+u) = a11 a22/a12.
    CHECK(us == doctest::Approx(1.7 * 1.67 / (0.8 * 0.8) - 1.0).epsilon(1e-10));
    CHECK(b.C2 >= us);
    CHECK(b.C2 >= 0.4);
    CHECK(b.C3 == doctest::Approx(std::max(0.1, p.growth(b.C2) / p.a22)));
  }

  TEST_CASE("no positive equilibrium under weak coupling") {
    ModelParams p;
    p.a12 = 0.1;
    CHECK(positive_equilibrium(p) == 0.0);
  }
}
