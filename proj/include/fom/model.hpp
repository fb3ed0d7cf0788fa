#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fom {

/// Infection-rate function f(u) of infective humans by agents.
///
/// Either the Beverton-Holt form f(u) = m*u/(a+u) used throughout the
/// experiments, or a caller-supplied evaluator together with f'(0).
class GrowthFunction {
 public:
  enum class Kind { BevertonHolt, Custom };

  static GrowthFunction beverton_holt(double m, double a);
  static GrowthFunction custom(std::function<double(double)> f, double derivative_at_zero,
                               std::string label = "custom");

  double operator()(double u) const;
  /// Analytic for Beverton-Holt, central difference otherwise.
  double derivative(double u) const;
  double derivative_at_zero() const { return fprime0_; }

  Kind kind() const { return kind_; }
  double m() const { return m_; }
  double a() const { return a_; }
  const std::string& label() const { return label_; }

 private:
  Kind kind_ = Kind::BevertonHolt;
  double m_ = 0.0;
  double a_ = 1.0;
  double fprime0_ = 0.0;
  std::function<double(double)> eval_;
  std::string label_;
};

/// Impulsive disinfection map u -> H(u), applied to the agents only.
class ImpulseFunction {
 public:
  enum class Kind { Identity, Linear, Saturating, Custom };

  static ImpulseFunction identity();
  /// H(u) = theta*u; only H'(0) matters for the linearised problems.
  static ImpulseFunction linear(double theta);
  /// H(u) = c*u/(d+u).
  static ImpulseFunction saturating(double c, double d);
  static ImpulseFunction custom(std::function<double(double)> h, double derivative_at_zero,
                                std::string label = "custom");

  double operator()(double u) const;
  double derivative(double u) const;
  double derivative_at_zero() const { return hprime0_; }

  Kind kind() const { return kind_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double theta() const { return theta_; }
  const std::string& label() const { return label_; }

 private:
  Kind kind_ = Kind::Identity;
  double c_ = 0.0;
  double d_ = 1.0;
  double theta_ = 1.0;
  double hprime0_ = 1.0;
  std::function<double(double)> eval_;
  std::string label_;
};

/// All coefficients of the two-season model. Rates are per unit time,
/// diffusivities and expansion capacities per unit length^2/time.
struct ModelParams {
  double d1 = 0.5;      // agent diffusion (wet season)
  double d2 = 0.5;      // infective human diffusion
  double a11 = 0.8;     // agent death rate, wet season
  double a12 = 1.67;    // agent shedding by humans
  double a22 = 0.8;     // human fatality, wet season
  double delta1 = 1.5;  // agent death rate, dry season
  double delta2 = 1.5;  // human fatality, dry season
  double mu1 = 6.0;     // agent expansion capacity
  double mu2 = 8.0;     // human expansion capacity
  double tau = 6.0;     // dry-season length
  double T = 20.0;      // period
  double s0 = 2.0;      // initial half-width
  GrowthFunction growth = GrowthFunction::beverton_holt(1.7, 1.0);
  ImpulseFunction impulse = ImpulseFunction::identity();
};

/// Initial densities on [-s0, s0].
struct InitialData {
  std::function<double(double)> u0;
  std::function<double(double)> v0;

  /// u0 = u_amp*cos(pi x/(2 s0)), v0 = v_amp*cos(pi x/(2 s0)).
  static InitialData cosine(double s0, double u_amp, double v_amp);

  /// Sampled sup-norms over [-s0, s0].
  double sup_u0(double s0, int samples = 4001) const;
  double sup_v0(double s0, int samples = 4001) const;
};

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::optional<double> first_violation;  // sample point where the check first failed
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  const ValidationCheck* find(const std::string& name) const;
  std::string summary() const;
};

/// Sampled surrogate of assumptions (F) and (H) plus positivity of every rate.
///
/// The growth and impulse conditions are checked on `samples` log-spaced
/// points in [1e-6, 1e6] * characteristic density (the Beverton-Holt
/// half-saturation constant when available, otherwise 1).
ValidationReport validate_assumptions(const ModelParams& params, int samples = 400);

/// Initial data vanish at +-s0 and are positive inside (sampled).
ValidationReport validate_initial_data(const ModelParams& params, const InitialData& init,
                                       int samples = 401);

/// A-priori bounds 0 < u < C2, 0 < v < C3 of the free-boundary solution.
struct AprioriBounds {
  double u_star = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
};

/// Positive root of f(u)/u = a11*a22/a12, or 0 when a12*f'(0) <= a11*a22.
double positive_equilibrium(const ModelParams& params);

AprioriBounds compute_bounds(const ModelParams& params, const InitialData& init);

/// Same bounds from sup-norms directly (used when the initial data are not needed).
AprioriBounds compute_bounds(const ModelParams& params, double sup_u0, double sup_v0);

}  // namespace fom
