#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fom/tridiagonal.hpp"

using namespace fom;

TEST_SUITE("tridiagonal") {
  TEST_CASE("thomas solve matches the residual of a random diagonally dominant system") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const std::size_t n = 50;
    std::vector<double> a(n), b(n), c(n), x(n), rhs(n), scratch;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = U(rng);
      c[i] = U(rng);
      b[i] = 3.0 + U(rng);
      x[i] = U(rng);
    }
    for (std::size_t i = 0; i < n; ++i) {
      rhs[i] = b[i] * x[i] + (i > 0 ? a[i] * x[i - 1] : 0.0) + (i + 1 < n ? c[i] * x[i + 1] : 0.0);
    }
    solve_tridiagonal(a, b, c, rhs, scratch);
    for (std::size_t i = 0; i < n; ++i) CHECK(rhs[i] == doctest::Approx(x[i]).epsilon(1e-12));
  }

  TEST_CASE("constant tridiagonal agrees with the general solver") {
    const std::size_t n = 20;
    ConstantTridiagonal m(n, 2.5, -1.0);
    std::vector<double> r1(n), r2(n), scratch;
    for (std::size_t i = 0; i < n; ++i) r1[i] = r2[i] = std::sin(0.3 * i);
    std::vector<double> a(n, -1.0), b(n, 2.5), c(n, -1.0);
    m.solve(r1);
    solve_tridiagonal(a, b, c, r2, scratch);
    for (std::size_t i = 0; i < n; ++i) CHECK(r1[i] == doctest::Approx(r2[i]).epsilon(1e-13));
  }

  TEST_CASE("crank-nicolson decays the lowest sine mode at the discrete rate") {
    const std::size_t n = 63;
    const double h = 1.0 / (n + 1);
    const double d = 0.7, c = 0.2, dt = 1e-3;
    CrankNicolson cn(n, d, c, h, dt);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::sin(M_PI * (i + 1) * h);
    cn.step(w);
    // Discrete eigenvalue of the second-difference operator.
    const double lam = d * 4.0 / (h * h) * std::pow(std::sin(M_PI * h / 2), 2) + c;
    const double g = (1 - 0.5 * dt * lam) / (1 + 0.5 * dt * lam);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(w[i] == doctest::Approx(g * std::sin(M_PI * (i + 1) * h)).epsilon(1e-12));
    }
  }

  TEST_CASE("positivity flag follows the mesh ratio") {
    CHECK(CrankNicolson(10, 1.0, 0.0, 0.1, 0.005).positivity_preserving());
    CHECK_FALSE(CrankNicolson(10, 1.0, 0.0, 0.1, 0.05).positivity_preserving());
  }
}
