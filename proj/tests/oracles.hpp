#pragma once

// Test-side oracles. Nothing here calls into the library's eigen solvers.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "fom/model.hpp"

namespace oracle {

// Long double throughout: its exponent range covers damping factors like
// e^{-8000} that a double flushes to zero on short intervals.
using Real = long double;
using Mat2 = std::array<Real, 4>;  // row-major

inline Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

inline Real spectral_radius(const Mat2& m) {
  const Real tr = m[0] + m[3];
  const Real det = m[0] * m[3] - m[1] * m[2];
  const std::complex<Real> disc = std::sqrt(std::complex<Real>(tr * tr - 4.0L * det));
  return std::max(std::abs(0.5L * (tr + disc)), std::abs(0.5L * (tr - disc)));
}

// Propagator of y' = A y over `span` by classical RK4 with n steps.
inline Mat2 rk4_propagator(const Mat2& A, Real span, int n) {
  const Real h = span / n;
  auto f = [&](const std::array<Real, 2>& y) {
    return std::array<Real, 2>{A[0] * y[0] + A[1] * y[1], A[2] * y[0] + A[3] * y[1]};
  };
  Mat2 out{};
  for (int col = 0; col < 2; ++col) {
    std::array<Real, 2> y{col == 0 ? 1.0L : 0.0L, col == 1 ? 1.0L : 0.0L};
    for (int i = 0; i < n; ++i) {
      const auto k1 = f(y);
      const auto k2 = f({y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
      const auto k3 = f({y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
      const auto k4 = f({y[0] + h * k3[0], y[1] + h * k3[1]});
      y[0] += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
      y[1] += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    }
    out[col] = y[0];
    out[2 + col] = y[1];
  }
  return out;
}

// Principal eigenvalue on (l1, l2) from the Floquet multiplier of the
// cos-mode ODE: dry Phi' = -delta1 Phi, Psi' = -(delta2 + d2 k) Psi; wet the
// linearised coupled system; Phi jumps by H'(0) at the period end.
// kappa < 0 requests the spatially homogeneous limit (kappa = 0).
inline double floquet_lambda1(const fom::ModelParams& p, double length, int steps = 20000) {
  const Real kappa = length > 0.0 ? std::pow(std::numbers::pi_v<Real> / length, 2) : 0.0L;
  const Real fp = p.growth.derivative_at_zero();
  const Real hp = p.impulse.derivative_at_zero();
  const Real tau = p.tau;
  const Mat2 dry{std::exp(-p.delta1 * tau), 0.0L, 0.0L, std::exp(-(p.delta2 + p.d2 * kappa) * tau)};
  const Mat2 A{-(p.d1 * kappa + p.a11), p.a12, fp, -(p.d2 * kappa + p.a22)};
  const Mat2 wet = rk4_propagator(A, p.T - tau, steps);
  const Mat2 jump{hp, 0.0L, 0.0L, 1.0L};
  const Mat2 M = mul(jump, mul(wet, dry));
  return static_cast<double>(-std::log(spectral_radius(M)) / p.T);
}

// Relative residual of the profile ODE: fourth-order central differences of
// (Phi, Psi) against the right-hand side on a grid with h * rate <= 0.01, away
// from the season switch, plus the impulse matching Phi(0) = H'(0) Phi(T),
// Psi(0) = Psi(T). Relative truncation is ~(h rate)^4 / 30 ~ 3e-10.
template <class Profile>
double profile_residual(const fom::ModelParams& p, double length, double lambda, Profile&& raw) {
  auto prof = [&](double t) { return raw(std::clamp(t, 0.0, p.T)); };
  const double kappa = length > 0.0 ? std::pow(std::numbers::pi / length, 2) : 0.0;
  const double fp = p.growth.derivative_at_zero();
  // Fastest exponential rate present; keep h * rate <= 0.01.
  const double rate =
      std::max({std::abs(lambda), p.delta1, p.delta2 + p.d2 * kappa, p.d1 * kappa + p.a11,
                p.d2 * kappa + p.a22, p.a12, fp}) + std::sqrt(p.a12 * fp) + std::abs(lambda);
  const int n = static_cast<int>(std::ceil(p.T / std::min(1e-3, 0.01 / rate)));
  const double h = p.T / n;
  double worst = 0.0;
  double scale = 0.0;
  for (int i = 0; i <= n; ++i) {
    const auto [a, b] = prof(i * h);
    scale = std::max({scale, std::abs(a), std::abs(b)});
  }
  for (int i = 2; i + 2 <= n; ++i) {
    const double t = i * h;
    if (std::abs(t - p.tau) < 2.5 * h) continue;
    const auto [pm2, qm2] = prof(t - 2 * h);
    const auto [pm, qm] = prof(t - h);
    const auto [p0, q0] = prof(t);
    const auto [pp, qp] = prof(t + h);
    const auto [pp2, qp2] = prof(t + 2 * h);
    const double dphi = (-pp2 + 8 * pp - 8 * pm + pm2) / (12 * h);
    const double dpsi = (-qp2 + 8 * qp - 8 * qm + qm2) / (12 * h);
    double rphi, rpsi;
    if (t < p.tau) {
      rphi = dphi - (lambda - p.delta1) * p0;
      rpsi = dpsi - (lambda - p.delta2 - p.d2 * kappa) * q0;
    } else {
      rphi = dphi - ((lambda - p.d1 * kappa - p.a11) * p0 + p.a12 * q0);
      rpsi = dpsi - (fp * p0 + (lambda - p.d2 * kappa - p.a22) * q0);
    }
    worst = std::max({worst, std::abs(rphi), std::abs(rpsi)});
  }
  const auto [phi0, psi0] = prof(0.0);
  const auto [phiT, psiT] = prof(p.T);
  worst = std::max({worst, std::abs(phi0 - p.impulse.derivative_at_zero() * phiT),
                    std::abs(psi0 - psiT)});
  return worst / scale;
}

}  // namespace oracle
