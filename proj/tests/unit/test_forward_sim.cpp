#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "fom/error.hpp"
#include "fom/forward_sim.hpp"

using namespace fom;

namespace {

SimConfig small(double horizon, int N = 64) {
  SimConfig c;
  c.N = N;
  c.horizon = horizon;
  return c;
}

bool is_dry(const ModelParams& p, double t) {
  const double local = t - p.T * std::floor(t / p.T + 1e-12);
  return local < p.tau - 1e-9;
}

}  // namespace

TEST_SUITE("forward_sim") {
  TEST_CASE("initial state samples the data on the initial interval") {
    const ModelParams p;
    const SimState st = SimState::initial(p, fixture::initial(), 49);
    CHECK(st.u.size() == 51);
    CHECK(st.r == -2.0);
    CHECK(st.s == 2.0);
    CHECK(st.u.front() == 0.0);
    CHECK(st.v.back() == 0.0);
    CHECK(st.u[25] == doctest::Approx(0.4));
    CHECK(st.u_at(0.0) == doctest::Approx(0.4));
    CHECK(st.u_at(3.0) == 0.0);
    CHECK(st.x(25) == doctest::Approx(0.0));
  }

  TEST_CASE("impulse maps u nodewise and leaves v and the fronts alone") {
    const ModelParams p = fixture::impulse_saturating();
    SimState st = SimState::initial(p, fixture::initial(), 40);
    const SimState before = st;
    apply_impulse(st, p);
    for (std::size_t i = 0; i < st.u.size(); ++i) {
      CHECK(st.u[i] == p.impulse(before.u[i]));
      CHECK(st.v[i] == before.v[i]);
    }
    CHECK(st.r == before.r);
    CHECK(st.s == before.s);
  }

  TEST_CASE("the period wrap inside a run is exactly the impulse") {
    const ModelParams p = fixture::impulse_saturating();
    const SimConfig to_T = small(p.T);
    Trajectory a = run(p, fixture::initial(), to_T);
    SimState st = a.final_state;
    const SimState pre = st;
    apply_impulse(st, p);
    SimConfig cont = small(2 * p.T);
    const Trajectory b = run_from(p, st, cont);
    const Trajectory full = run(p, fixture::initial(), small(2 * p.T));
    REQUIRE(full.final_state.u.size() == b.final_state.u.size());
    for (std::size_t i = 0; i < b.final_state.u.size(); ++i) {
      CHECK(full.final_state.u[i] == b.final_state.u[i]);
      CHECK(full.final_state.v[i] == b.final_state.v[i]);
    }
    // The trajectory records the wrap twice: before and after H.
    for (std::size_t i = 1; i < full.t.size(); ++i) {
      if (std::abs(full.t[i] - p.T) < 1e-9 && full.t[i] == full.t[i - 1]) {
        CHECK(full.sup_v[i] == full.sup_v[i - 1]);
        CHECK(full.sup_u[i] == doctest::Approx(p.impulse(full.sup_u[i - 1])).epsilon(1e-15));
        CHECK(full.sup_u[i - 1] == doctest::Approx(pre.sup_u()).epsilon(1e-15));
      }
    }
  }

  TEST_CASE("fronts are frozen in the dry season and move outward in the wet season") {
    const ModelParams p = fixture::impulse_identity();
    const Trajectory tr = run(p, fixture::initial(), small(3 * p.T));
    for (std::size_t i = 1; i < tr.t.size(); ++i) {
      CHECK(tr.s[i] >= tr.s[i - 1]);
      CHECK(tr.r[i] <= tr.r[i - 1]);
      if (is_dry(p, tr.t[i]) && tr.t[i] > tr.t[i - 1] && is_dry(p, tr.t[i - 1]) &&
          std::floor(tr.t[i] / p.T) == std::floor(tr.t[i - 1] / p.T)) {
        CHECK(tr.s[i] == tr.s[i - 1]);
        CHECK(tr.r[i] == tr.r[i - 1]);
      }
    }
    CHECK(tr.s.back() > 2.0);
    CHECK(tr.r.back() == doctest::Approx(-tr.s.back()).epsilon(1e-10));
  }

  TEST_CASE("densities stay within the a-priori bounds") {
    for (const auto& p : {fixture::impulse_identity(), fixture::dry_length(3.0)}) {
      const Trajectory tr = run(p, fixture::initial(), small(4 * p.T));
      CHECK(tr.max_u_over_C2 <= 1.0 + 1e-8);
      CHECK(tr.max_v_over_C3 <= 1.0 + 1e-8);
      for (double x : tr.final_state.u) CHECK(x >= 0.0);
      for (double x : tr.final_state.v) CHECK(x >= 0.0);
    }
  }

  TEST_CASE("ordered initial data give ordered solutions") {
    const ModelParams p = fixture::impulse_identity();
    const auto lo = InitialData::cosine(2.0, 0.2, 0.05);
    const auto hi = InitialData::cosine(2.0, 0.5, 0.2);
    const Trajectory a = run(p, lo, small(2 * p.T));
    const Trajectory b = run(p, hi, small(2 * p.T));
    for (std::size_t i = 0; i < a.t.size() && i < b.t.size(); ++i) {
      if (a.t[i] != b.t[i]) continue;
      CHECK(a.s[i] <= b.s[i] + 1e-12);
      CHECK(a.r[i] >= b.r[i] - 1e-12);
    }
    for (int k = 0; k <= 50; ++k) {
      const double x = a.final_state.r + (a.final_state.s - a.final_state.r) * k / 50.0;
      CHECK(a.final_state.u_at(x) <= b.final_state.u_at(x) + 1e-10);
    }
  }

  TEST_CASE("front position converges under grid refinement") {
    const ModelParams p = fixture::impulse_saturating();
    SimConfig c1 = small(20.0, 100), c2 = small(20.0, 200);
    c1.impulse_at_zero = c2.impulse_at_zero = false;
    const double s1 = run(p, fixture::initial(), c1).final_state.s;
    const double s2 = run(p, fixture::initial(), c2).final_state.s;
    CHECK(std::abs(s1 - s2) < 5e-3 * s2);
    // tests/reference/mol_front.py: scipy BDF method of lines, same setup.
    CHECK(std::abs(s2 - 3.0535) < 5e-3);
  }

  TEST_CASE("snapshots follow the cadence and the probe follows the origin") {
    const ModelParams p = fixture::impulse_identity();
    SimConfig c = small(2 * p.T);
    c.snap_every = 5.0;
    const Trajectory tr = run(p, fixture::initial(), c);
    REQUIRE(tr.snapshots.size() >= 8);
    CHECK(tr.snapshots[0].t == 0.0);
    // Snapshots land on the first step at or after each cadence time.
    const double dt = c.effective_dt(p);
    CHECK(tr.snapshots[1].t >= 5.0 - 1e-9);
    CHECK(tr.snapshots[1].t < 5.0 + dt + 1e-9);
    CHECK(tr.probe_u.size() == tr.t.size());
  }

  TEST_CASE("outcome detection") {
    const ModelParams p = fixture::impulse_identity();
    SimConfig c = small(300.0, 64);
    c.stop_on_outcome = true;
    const Trajectory tr = run(p, fixture::initial(), c);
    const Outcome o = detect_outcome(tr, c, p);
    CHECK(o.verdict == Verdict::Spreading);
    CHECK(*o.s_end - *o.r_end > 16.0);
    CHECK(*o.lambda1_front < 0.0);
    CHECK(tr.t.back() < 300.0);

    // Strong disinfection on a small interval kills the infection.
    ModelParams q = p;
    q.tau = 14.0;
    q.impulse = ImpulseFunction::linear(0.5);
    SimConfig cq = small(200.0, 64);
    cq.stop_on_outcome = true;
    const Trajectory tq = run(q, fixture::initial(), cq);
    CHECK(detect_outcome(tq, cq, q).verdict == Verdict::Vanishing);
  }

  TEST_CASE("invalid configuration") {
    const ModelParams p;
    SimConfig c = small(10.0, 8);
    CHECK_THROWS_AS(run(p, fixture::initial(), c), ConfigError);
    c = small(-1.0);
    CHECK_THROWS_AS(run(p, fixture::initial(), c), ConfigError);
  }
}
