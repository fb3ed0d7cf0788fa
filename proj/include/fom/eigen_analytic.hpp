#pragma once

#include <utility>

#include "fom/model.hpp"

namespace fom {

/// Principal Dirichlet eigenvalue of -d^2/dx^2 on an interval of length L: (pi/L)^2.
double kappa1(double length);

/// Coefficient algebra of the separated periodic eigenproblem for one
/// spatial mode kappa1.
///
/// With A = [[-d1 k - a11, a12], [f'(0), -d2 k - a22]] the wet-season rates
/// are lambda + c1 and lambda + c2. The b-coefficients and thetas turn the
/// two jump conditions (impulse on the agent component, periodicity of the
/// human component) into a pair of rational equations in (k, y = e^{lambda T}).
struct SpectralCoeffs {
  double kappa1 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double b11 = 0.0, b12 = 0.0, b13 = 0.0, b14 = 0.0;
  double b21 = 0.0, b22 = 0.0, b23 = 0.0, b24 = 0.0;
  double theta1 = 0.0;  // H'(0) e^{-delta1 tau}
  double theta2 = 0.0;  // e^{-(delta2 + d2 kappa1) tau}

  // Inputs the algebra was built from; the eigenfunction profile needs them.
  double a12 = 0.0;
  double fprime0 = 0.0;
  double hprime0 = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double d2 = 0.0;
  double tau = 0.0;
  double T = 0.0;
  double A1 = 0.0;  // a11 + d1 kappa1 + c1 (> 0)
  double A2 = 0.0;  // a22 + d2 kappa1 + c2 (= -A1 < 0)

  /// |B| = a12 f'(0) - A1 A2 > 0.
  double det_b() const { return a12 * fprime0 - A1 * A2; }
};

SpectralCoeffs spectral_coeffs(const ModelParams& params, double kappa1);

/// Which branch of the (k, y) intersection picture applies.
enum class EigenCase { EqualRatio, Greater, Less };

const char* to_string(EigenCase c);

struct EigenSolution {
  double lambda1 = 0.0;
  double k = 0.0;
  double y = 1.0;
  /// k * e^{-(c1 - c2) tau}: the mixing coordinate in units where the
  /// positivity window is (-A1/f'(0), a12/A1).
  double k_scaled = 0.0;
  /// Distance of k_scaled from the window end where one profile component
  /// vanishes at t = tau (a12/A1 in the Greater case, -A1/f'(0) in the Less
  /// case). Kept separately so the profile stays accurate when the root
  /// hugs that end; unused in the EqualRatio case.
  double eps = 0.0;
  EigenCase case_id = EigenCase::EqualRatio;
  SpectralCoeffs coeffs;

  /// (Phi(t), Psi(t)) on [0, T]; t = 0 returns the post-impulse value.
  std::pair<double, double> profile(double t) const;
};

/// Solves the rational (k, y) system and keeps the root whose profile is
/// strictly positive on [0, T]. Throws SolverError when no such root exists.
EigenSolution solve_ky(const SpectralCoeffs& coeffs, const ModelParams& params);

/// Principal eigenvalue of the periodic impulsive problem on (l1, l2).
EigenSolution lambda1_interval(const ModelParams& params, double l1, double l2);

/// Symmetric interval (-l, l).
inline EigenSolution lambda1_halfwidth(const ModelParams& params, double l) {
  return lambda1_interval(params, -l, l);
}

/// Limit eigenvalue nu1 = lim_{l -> inf} lambda1(-l, l) (kappa1 = 0).
EigenSolution nu1(const ModelParams& params);

/// Eigenfunction time profile; throws std::out_of_range outside [0, T].
std::pair<double, double> eigen_profile(const EigenSolution& sol, double t);

}  // namespace fom
