#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "fom/classifier.hpp"
#include "fom/error.hpp"

using namespace fom;

TEST_SUITE("classifier") {
  TEST_CASE("non-negative limit eigenvalue means vanishing") {
    // Humans are not hit by the impulse, so a long dry season is what
    // breaks the cycle.
    ModelParams p = fixture::impulse_identity();
    p.tau = 14.0;
    p.impulse = ImpulseFunction::linear(0.5);
    const Outcome o = classify(p, fixture::initial());
    CHECK(o.verdict == Verdict::Vanishing);
    CHECK(*o.nu1 > 0.0);
  }

  TEST_CASE("negative eigenvalue on the initial interval means spreading") {
    ModelParams p = fixture::impulse_identity();
    p.s0 = 45.0;
    const Outcome o = classify(p, InitialData::cosine(45.0, 0.4, 0.1));
    CHECK(o.verdict == Verdict::Spreading);
    CHECK(*o.lambda1_s0 < 0.0);
    CHECK(o.notes.size() == 1);
  }

  TEST_CASE("otherwise the expansion capacities decide") {
    for (const auto& p : {fixture::impulse_saturating(), fixture::dry_length(4.7)}) {
      const Outcome o = classify(p, fixture::initial());
      CHECK(o.verdict == Verdict::ThresholdRegime);
      CHECK(*o.nu1 < 0.0);
      CHECK(*o.lambda1_s0 > 0.0);
    }
  }

  TEST_CASE("bad initial data are reported but do not block the verdict") {
    InitialData bad = fixture::initial();
    bad.u0 = [](double) { return 1.0; };
    const Outcome o = classify(fixture::impulse_identity(), bad);
    CHECK(o.notes.size() == 2);
  }

  TEST_CASE("threshold bisection narrows to the requested resolution") {
    // Small initial patch and a short season so both outcomes are decided
    // within a few periods.
    ModelParams p = fixture::dry_length(3.0);
    p.s0 = 1.0;
    const InitialData init = InitialData::cosine(1.0, 0.4, 0.1);
    REQUIRE(classify(p, init).verdict == Verdict::ThresholdRegime);
    SimConfig c;
    c.N = 32;
    c.horizon = 400.0;
    c.vanish_eps = 1e-3;
    const double lo = 0.01, hi = 4.0;
    const MuStarResult r = find_mu_star(p, init, 8.0 / 6.0, lo, hi, c);
    CHECK_FALSE(r.paused);
    CHECK(r.monotone);
    CHECK(r.hi - r.lo <= std::ldexp(hi - lo, -10));
    CHECK(r.lo < r.hi);
    CHECK(r.probes.size() >= 12);
  }

  TEST_CASE("bracket checks") {
    SimConfig c;
    c.N = 32;
    c.horizon = 20.0;
    CHECK_THROWS_AS(find_mu_star(fixture::impulse_identity(), fixture::initial(), 1.0, 2.0, 1.0, c),
                    ConfigError);
    CHECK_THROWS_AS(find_mu_star(fixture::impulse_identity(), fixture::initial(), -1.0, 1.0, 2.0, c),
                    ConfigError);
  }
}
