#pragma once

#include <vector>

#include "fom/model.hpp"

namespace fom {

/// One-period map of the linearised problem on a uniform grid of (l1, l2):
/// impulse on the agents, dry season, wet season. State vectors hold the N
/// agent values followed by the N human values.
class MonodromyOperator {
 public:
  /// dt <= 0 selects T/2000. The actual step in each season is the largest
  /// value not above dt that divides the season and keeps Crank-Nicolson
  /// positivity (d*dt/h^2 + decay*dt/2 <= 1) when `positive_steps` is set.
  MonodromyOperator(const ModelParams& params, double l1, double l2, int N = 400,
                    double dt = 0.0, bool positive_steps = true);

  std::vector<double> apply(const std::vector<double>& x) const;

  int size() const { return n_; }
  double h() const { return h_; }
  double period() const { return T_; }
  double l1() const { return l1_; }
  double l2() const { return l2_; }
  int dry_steps() const { return n_dry_; }
  int wet_steps() const { return n_wet_; }

  /// Interior node x_i, i = 0..N-1.
  double node(int i) const { return l1_ + h_ * (i + 1); }

 private:
  int n_;
  double l1_, l2_, h_, T_;
  double d1_, d2_, delta1_, delta2_;
  double hprime0_;
  int n_dry_ = 0, n_wet_ = 0;
  double dt_dry_ = 0.0, dt_wet_ = 0.0;
  // exp(R dt_wet/2) for R = [[-a11, a12], [f'(0), -a22]].
  double e11_ = 1.0, e12_ = 0.0, e21_ = 0.0, e22_ = 1.0;
};

struct DiscreteEigenResult {
  double lambda1 = 0.0;
  double rho = 0.0;
  int iterations = 0;
  /// Smallest entry of the normalised final iterate (positive for a
  /// principal eigenvector).
  double min_component = 0.0;
  std::vector<double> eigenvector;
};

/// Power iteration from the discrete sine mode; lambda1 = -ln(rho)/T.
/// Throws SolverError if successive Rayleigh quotients still differ by more
/// than tol (relative) after max_iter applications.
DiscreteEigenResult lambda1_discrete(const MonodromyOperator& op, double tol = 1e-11,
                                     int max_iter = 20000);

/// (4 lambda(h/2) - lambda(h)) / 3: N and 2N+1 interior nodes, same requested dt.
double lambda1_richardson(const ModelParams& params, double l1, double l2, int N, double dt = 0.0);

}  // namespace fom
