#include "fom/eigen_analytic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fom/error.hpp"

namespace fom {

namespace {

constexpr double kCaseTolerance = 1e-9;
constexpr int kPositivitySamples = 512;

// Wet-season profile, written relative to t = tau so every factor stays O(1).
// With E = e^{(c2-c1)(t-tau)}:
//   Phi = e^{(lambda+c1) t} (a12 - A1 k^ E) / |B|,
//   Psi = e^{(lambda+c1) t} (A1 + f'(0) k^ E) / |B|.
// The factor that vanishes at the anchored end of the window is evaluated
// from eps so it keeps full relative accuracy when the root hugs that end.
std::pair<double, double> wet_profile_factors(const SpectralCoeffs& c, EigenCase id,
                                              double k_scaled, double eps, double t) {
  const double arg = (c.c2 - c.c1) * (t - c.tau);
  const double E = std::exp(arg);
  const double one_minus_E = -std::expm1(arg);
  switch (id) {
    case EigenCase::Greater:
      return {c.a12 * one_minus_E + c.A1 * eps * E, c.A1 + c.fprime0 * k_scaled * E};
    case EigenCase::Less:
      return {c.a12 - c.A1 * k_scaled * E, c.A1 * one_minus_E + c.fprime0 * eps * E};
    case EigenCase::EqualRatio:
      break;
  }
  return {c.a12, c.A1};
}

std::pair<double, double> wet_profile(const SpectralCoeffs& c, double lambda, EigenCase id,
                                      double k_scaled, double eps, double t) {
  const double growth = std::exp((lambda + c.c1) * t) / c.det_b();
  const auto [phi, psi] = wet_profile_factors(c, id, k_scaled, eps, t);
  return {growth * phi, growth * psi};
}

std::pair<double, double> profile_at(const SpectralCoeffs& c, double lambda, EigenCase id,
                                     double k_scaled, double eps, double t) {
  if (t >= c.tau) return wet_profile(c, lambda, id, k_scaled, eps, t);
  const auto [phi_tau, psi_tau] = wet_profile(c, lambda, id, k_scaled, eps, c.tau);
  return {phi_tau * std::exp((lambda - c.delta1) * (t - c.tau)),
          psi_tau * std::exp((lambda - c.delta2 - c.d2 * c.kappa1) * (t - c.tau))};
}

// The exponential prefactors are positive, so positivity of (Phi, Psi) is
// positivity of the bracketed wet-season factors; the dry season only
// rescales the values at tau. Checking the factors avoids the under- and
// overflow of the full profile on stiff intervals.
bool profile_positive(const SpectralCoeffs& c, const EigenSolution& s) {
  auto check = [&](double t) {
    const auto [phi, psi] = wet_profile_factors(c, s.case_id, s.k_scaled, s.eps, t);
    return phi > 0.0 && psi > 0.0;
  };
  for (int i = 0; i < kPositivitySamples; ++i) {
    const double t = c.tau + (c.T - c.tau) * static_cast<double>(i) / (kPositivitySamples - 1);
    if (!check(t)) return false;
  }
  // The season switch is where positivity is tightest.
  return check(c.tau);
}

}  // namespace

double kappa1(double length) {
  if (!(length > 0.0)) throw std::invalid_argument("kappa1: interval length must be positive");
  const double r = std::numbers::pi / length;
  return r * r;
}

const char* to_string(EigenCase c) {
  switch (c) {
    case EigenCase::EqualRatio:
      return "equal_ratio";
    case EigenCase::Greater:
      return "greater";
    case EigenCase::Less:
      return "less";
  }
  return "unknown";
}

SpectralCoeffs spectral_coeffs(const ModelParams& p, double kappa) {
  if (kappa < 0.0) throw std::invalid_argument("spectral_coeffs: kappa1 must be non-negative");
  SpectralCoeffs c;
  c.kappa1 = kappa;
  c.a12 = p.a12;
  c.fprime0 = p.growth.derivative_at_zero();
  c.hprime0 = p.impulse.derivative_at_zero();
  c.delta1 = p.delta1;
  c.delta2 = p.delta2;
  c.d2 = p.d2;
  c.tau = p.tau;
  c.T = p.T;

  const double coupling = 4.0 * p.a12 * c.fprime0;
  const double g = p.a22 + (p.d2 - p.d1) * kappa - p.a11;
  const double disc = std::sqrt(g * g + coupling);
  const double trace = -(p.d1 + p.d2) * kappa - p.a11 - p.a22;
  c.c1 = 0.5 * (trace + disc);
  c.c2 = 0.5 * (trace - disc);
  // A1 = (disc - g)/2 without cancellation when the coupling is weak.
  c.A1 = g <= 0.0 ? 0.5 * (disc - g) : 0.5 * coupling / (disc + g);
  c.A2 = -c.A1;

  c.b11 = p.a12 * std::exp(c.c1 * p.tau);
  c.b12 = c.A1 * std::exp(c.c2 * p.tau);
  c.b13 = p.a12 * std::exp(c.c1 * p.T);
  c.b14 = c.A1 * std::exp(c.c2 * p.T);
  c.b21 = c.fprime0 * std::exp(c.c2 * p.tau);
  c.b22 = c.A2 * std::exp(c.c1 * p.tau);
  c.b23 = c.fprime0 * std::exp(c.c2 * p.T);
  c.b24 = c.A2 * std::exp(c.c1 * p.T);
  c.theta1 = c.hprime0 * std::exp(-p.delta1 * p.tau);
  c.theta2 = std::exp(-(p.delta2 + p.d2 * kappa) * p.tau);
  return c;
}

EigenSolution solve_ky(const SpectralCoeffs& c, const ModelParams& params) {
  (void)params;
  if (!(c.a12 > 0.0) || !(c.fprime0 > 0.0) || !(c.A1 > 0.0)) {
    throw SolverError("solve_ky: coupling a12*f'(0) must be positive");
  }
  if (!(c.hprime0 > 0.0)) throw SolverError("solve_ky: H'(0) must be positive");

  EigenSolution sol;
  sol.coeffs = c;

  // b12/(theta1 b14) and b21/(theta2 b23) share the factor e^{c2(tau-T)},
  // so the ratio comparison is theta2 against theta1. Compare logarithms:
  // the b's and thetas under- or overflow for stiff short intervals.
  const double log_t1 = std::log(c.hprime0) - c.delta1 * c.tau;
  const double log_t2 = -(c.delta2 + c.d2 * c.kappa1) * c.tau;
  const double wet = c.T - c.tau;

  if (std::abs(log_t1 - log_t2) <= kCaseTolerance * std::max(1.0, std::abs(log_t1))) {
    sol.case_id = EigenCase::EqualRatio;
    sol.k = 0.0;
    sol.k_scaled = 0.0;
    sol.lambda1 = (c.c1 * (c.tau - c.T) + (c.delta2 + c.d2 * c.kappa1) * c.tau) / c.T;
    sol.y = std::exp(sol.lambda1 * c.T);
  } else {
    sol.case_id = log_t1 < log_t2 ? EigenCase::Greater : EigenCase::Less;
    // Thetas relative to the larger one; F is only needed up to a factor.
    const double log_tmax = std::max(log_t1, log_t2);
    const double t1 = std::exp(log_t1 - log_tmax);
    const double t2 = std::exp(log_t2 - log_tmax);

    // With k = k^ e^{(c1-c2)tau} and y = Y e^{-c1(T-tau)} the two jump
    // conditions read
    //   a12 - A1 k^     = theta1 Y (a12 - A1 q k^)
    //   A1 + f'(0) k^   = theta2 Y (A1 + f'(0) q k^),   q = e^{(c2-c1)(T-tau)}.
    // Eliminating Y leaves F(k^) = 0 with F(0) = a12 A1 (theta2 - theta1).
    // F changes sign on (0, a12/A1) in the Greater case and on (-A1/f'(0), 0)
    // in the Less case; those are exactly the positivity windows.
    const double arg = (c.c2 - c.c1) * wet;
    const double q = std::exp(arg);
    const double one_minus_q = -std::expm1(arg);
    const double A1 = c.A1;
    const double fp = c.fprime0;
    const double a12 = c.a12;
    const bool greater = sol.case_id == EigenCase::Greater;

    // Unknown eps = distance of k^ from the window end where a12 - A1 k^
    // (Greater) or A1 + f'(0) k^ (Less) vanishes. Every factor of F is
    // expanded in eps so nothing cancels, and the end signs are known:
    // F(eps -> 0) has the sign of (Less ? +1 : -1), F(width) the opposite.
    const double width = greater ? a12 / A1 : A1 / fp;
    auto factors = [&](double e) {
      // Returns {a12 - A1 k, A1 + fp q k, A1 + fp k, a12 - A1 q k}.
      if (greater) {
        return std::array<double, 4>{A1 * e, A1 + fp * q * a12 / A1 - fp * q * e,
                                     A1 + fp * a12 / A1 - fp * e, a12 * one_minus_q + A1 * q * e};
      }
      return std::array<double, 4>{a12 + A1 * A1 / fp - A1 * e, A1 * one_minus_q + fp * q * e,
                                   fp * e, a12 + A1 * A1 * q / fp - A1 * q * e};
    };
    auto F = [&](double e) {
      const auto f = factors(e);
      return t2 * f[0] * f[1] - t1 * f[2] * f[3];
    };
    const bool near_positive = !greater;  // sign of F just above eps = 0

    // Geometric bisection down to a factor-2 bracket, then arithmetic. The
    // root may sit hundreds of decades below the window width when one
    // damping factor is astronomically small.
    double lo = width * 1e-300;
    double hi = width;
    if ((F(lo) > 0.0) != near_positive) {
      // Root below the smallest probe: the vanishing factor is zero to
      // double precision. Keep the probe; lambda1 does not depend on it.
      hi = lo;
    }
    for (int it = 0; it < 400 && hi > lo; ++it) {
      const double mid = hi > 2.0 * lo ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if ((F(mid) > 0.0) == near_positive) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo <= 1e-15 * hi) break;
    }
    const double eps = 0.5 * (lo + hi);
    const double kh = greater ? a12 / A1 - eps : -A1 / fp + eps;

    // Pick the better-conditioned of the two expressions for Y, in logs.
    const auto f = factors(eps);
    const double log_Y = (f[0] / a12 >= f[2] / A1) ? std::log(f[0] / f[3]) - log_t1
                                                   : std::log(f[2] / f[1]) - log_t2;
    if (!std::isfinite(log_Y)) throw SolverError("solve_ky: non-positive multiplier y");

    sol.eps = eps;
    sol.k_scaled = kh;
    sol.k = kh * std::exp((c.c1 - c.c2) * c.tau);
    sol.lambda1 = (log_Y - c.c1 * wet) / c.T;
    sol.y = std::exp(sol.lambda1 * c.T);
  }

  if (!profile_positive(c, sol)) {
    std::ostringstream os;
    os << "solve_ky: root k=" << sol.k << " (lambda1=" << sol.lambda1
       << ") fails the positivity filter; case " << to_string(sol.case_id);
    throw SolverError(os.str());
  }
  return sol;
}

EigenSolution lambda1_interval(const ModelParams& params, double l1, double l2) {
  if (!(l1 < l2)) throw std::invalid_argument("lambda1_interval: need l1 < l2");
  return solve_ky(spectral_coeffs(params, kappa1(l2 - l1)), params);
}

EigenSolution nu1(const ModelParams& params) {
  return solve_ky(spectral_coeffs(params, 0.0), params);
}

std::pair<double, double> EigenSolution::profile(double t) const {
  return eigen_profile(*this, t);
}

std::pair<double, double> eigen_profile(const EigenSolution& sol, double t) {
  const auto& c = sol.coeffs;
  if (t < 0.0 || t > c.T) throw std::out_of_range("eigen_profile: t outside [0, T]");
  return profile_at(c, sol.lambda1, sol.case_id, sol.k_scaled, sol.eps, t);
}

}  // namespace fom
