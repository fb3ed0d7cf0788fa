#include <algorithm>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fom/config.hpp"
#include "fom/error.hpp"

using namespace fom;

TEST_SUITE("config") {
  TEST_CASE("parses keys, comments and lists") {
    std::istringstream in(
        "# header\n"
        "name = demo\n"
        "tau = 4.7   # dry season\n"
        "impulse = saturating\n"
        "impulse.c = 4\n"
        "impulse.d = 10\n"
        "sim.N = 128\n"
        "sim.impulse_at_zero = false\n"
        "sweep.key = eigen.l\n"
        "sweep.values = [5, 10, 15]\n"
        "\n");
    const ExperimentSpec s = parse_config(in);
    CHECK(s.name == "demo");
    CHECK(s.params.tau == 4.7);
    CHECK(s.params.impulse.kind() == ImpulseFunction::Kind::Saturating);
    CHECK(s.params.impulse.derivative_at_zero() == doctest::Approx(0.4));
    CHECK(s.sim.N == 128);
    CHECK_FALSE(s.sim.impulse_at_zero);
    CHECK(s.sweep_values == std::vector<double>{5, 10, 15});
  }

  TEST_CASE("errors carry the line number") {
    const auto message = [](const std::string& text) {
      std::istringstream in(text);
      try {
        parse_config(in, "cfg");
      } catch (const ConfigError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message("tau = 3\nbogus = 1\n").find("cfg: line 2") != std::string::npos);
    CHECK(message("tau = 3\n\nT = ten\n").find("line 3") != std::string::npos);
    CHECK(message("sim.N = 1.5\n").find("integer") != std::string::npos);
    CHECK(message("impulse = cubic\n").find("unknown kind") != std::string::npos);
    CHECK(message("no equals sign\n").find("line 1") != std::string::npos);
    CHECK(message("sweep.values = [1, x]\n").find("line 1") != std::string::npos);
    CHECK(message("d1 = nan\n").find("finite") != std::string::npos);
  }

  TEST_CASE("write then parse reproduces every field bit for bit") {
    for (const std::string& name : preset_names()) {
      ExperimentSpec s = preset(name);
      s.params.d1 = 0.1 + 1e-16 * 3;  // not representable in few digits
      s.params.tau = 1.0 / 3.0;
      std::ostringstream a;
      write_config(a, s);
      std::istringstream in(a.str());
      const ExperimentSpec back = parse_config(in);
      std::ostringstream b;
      write_config(b, back);
      CHECK(a.str() == b.str());
      CHECK(back.params.d1 == s.params.d1);
      CHECK(back.params.tau == s.params.tau);
      CHECK(back.sweep_values == s.sweep_values);
    }
  }

  TEST_CASE("presets carry the experiment parameters") {
    const ExperimentSpec a = preset("fig2a");
    CHECK(a.params.d1 == 5.0);
    CHECK(a.params.d2 == 40.0);
    CHECK(a.params.delta1 == 0.6);
    CHECK(a.params.delta2 == 0.9);
    CHECK(a.params.a11 == 0.2);
    CHECK(a.params.a12 == 0.8);
    CHECK(a.params.a22 == 0.3);
    CHECK(a.params.T == 10.0);
    CHECK(a.params.tau == 5.0);
    CHECK(a.params.growth.m() == 1.5);
    CHECK(a.params.growth.a() == 1.0);
    CHECK(a.params.impulse.derivative_at_zero() == 0.9);
    CHECK(a.sweep_key == "eigen.l");
    CHECK(a.sweep_values == std::vector<double>{5, 10, 15, 20, 25, 30});

    const ExperimentSpec b = preset("fig2b");
    CHECK(b.l2() - b.l1() == 20.0);
    CHECK(b.sweep_key == "impulse.theta");
    CHECK(b.sweep_values.size() == 10);
    CHECK(b.sweep_values.front() == 0.01);
    CHECK(b.sweep_values.back() == 0.91);

    const ExperimentSpec c = preset("fig2c");
    CHECK(c.sweep_key == "tau");
    CHECK(c.sweep_values == std::vector<double>{2, 3, 4, 5, 6, 7, 8});

    for (const char* n : {"fig3-left", "fig3-right"}) {
      const ExperimentSpec s = preset(n);
      CHECK(s.params.d1 == 0.5);
      CHECK(s.params.d2 == 0.5);
      CHECK(s.params.a11 == 0.8);
      CHECK(s.params.a12 == 1.67);
      CHECK(s.params.a22 == 0.8);
      CHECK(s.params.delta1 == 1.5);
      CHECK(s.params.delta2 == 1.5);
      CHECK(s.params.mu1 == 6.0);
      CHECK(s.params.mu2 == 8.0);
      CHECK(s.params.tau == 6.0);
      CHECK(s.params.T == 20.0);
      CHECK(s.params.growth.m() == 1.7);
      CHECK(s.sim.horizon == 700.0);
      CHECK(s.init_u_amp == 0.4);
      CHECK(s.init_v_amp == 0.1);
      CHECK(s.params.s0 == 2.0);
    }
    CHECK(preset("fig3-left").params.impulse.kind() == ImpulseFunction::Kind::Identity);
    CHECK(preset("fig3-right").params.impulse(10.0) == doctest::Approx(2.0));

    for (const char* n : {"fig4-left", "fig4-right"}) {
      const ExperimentSpec s = preset(n);
      CHECK(s.params.a12 == 1.7);
      CHECK(s.params.delta1 == 0.9);
      CHECK(s.params.delta2 == 0.9);
      CHECK(s.params.T == 10.0);
      CHECK(s.params.impulse.kind() == ImpulseFunction::Kind::Identity);
    }
    CHECK(preset("fig4-left").params.tau == 3.0);
    CHECK(preset("fig4-right").params.tau == 4.7);
    CHECK_THROWS_AS(preset("fig9"), ConfigError);
  }

  TEST_CASE("numeric keys cover the sweepable parameters") {
    const auto keys = numeric_keys();
    for (const char* k : {"tau", "impulse.theta", "eigen.l", "mu1", "sim.N"}) {
      CHECK(std::find(keys.begin(), keys.end(), k) != keys.end());
    }
    CHECK(std::find(keys.begin(), keys.end(), "name") == keys.end());
  }
}
