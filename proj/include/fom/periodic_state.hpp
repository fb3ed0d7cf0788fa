#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fom/model.hpp"

namespace fom {

/// One period of (w, z) on N interior nodes of (l1, l2). Level 0 is t = 0+
/// (after the impulse), level `levels()-1` is t = T.
struct PeriodicOrbit {
  double l1 = 0.0;
  double l2 = 0.0;
  int N = 0;
  std::vector<double> times;
  std::vector<double> w;  // levels() x N, row-major
  std::vector<double> z;
  bool zero = false;
  int iterations = 0;
  double final_gap = 0.0;
  /// Per sweep: largest pointwise increase and decrease against the previous
  /// iterate, over both components.
  std::vector<double> max_increase;
  std::vector<double> max_decrease;

  int levels() const { return static_cast<int>(times.size()); }
  double w_at(int level, int i) const { return w[static_cast<std::size_t>(level) * N + i]; }
  double z_at(int level, int i) const { return z[static_cast<std::size_t>(level) * N + i]; }
  double node(int i) const { return l1 + (l2 - l1) * (i + 1) / (N + 1); }
  /// Value at the node nearest the midpoint, per level.
  std::vector<double> w_center() const;
  double sup() const;
};

struct IterateOptions {
  enum class Seed { Upper, Lower };

  int N = 100;
  /// <= 0 selects T/2000; the step is reduced further so that the shifted
  /// Crank-Nicolson solves stay monotone.
  double dt = 0.0;
  double tol = 1e-8;
  int max_iter = 10000;
  Seed seed = Seed::Upper;
  /// Lower seed amplitude relative to the upper seed; <= 0 picks 1e-3.
  double lower_scale = 0.0;
  /// Called after each sweep with the new iterate.
  std::function<void(int, const PeriodicOrbit&)> observer;
};

/// Monotone iteration for the periodic problem on the fixed interval (l1, l2)
/// with shift gamma = delta1 + delta2 + a11 + a22. The upper seed is the
/// constant pair (C2, C3); the lower seed a small multiple of the principal
/// eigenfunction. Stops when the sup gap between sweeps, and the distance to
/// the limit extrapolated from the observed contraction, are below tol. The
/// zero orbit is reported when sup < 1e-10 or when the extrapolated limit of
/// a decreasing sequence is within tol of zero.
PeriodicOrbit monotone_iterate(const ModelParams& params, double l1, double l2,
                               const IterateOptions& opts = {});

/// Periodic orbit (W, Z) of the spatially homogeneous problem.
struct OdeOrbit {
  bool zero = false;
  int periods = 0;
  double final_gap = 0.0;
  double W0 = 0.0;  // W(0) = W(T), before the impulse
  double Z0 = 0.0;
  double T = 0.0;
  double tau = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double W0_plus = 0.0;  // H(W0)

  // Wet-season samples on a uniform grid of [tau, T] with derivatives, for
  // cubic Hermite interpolation.
  std::vector<double> wet_t, wet_W, wet_Z, wet_dW, wet_dZ;

  /// (W(t), Z(t)) for t in [0, T]; t = 0 returns the pre-impulse value.
  std::pair<double, double> value_at(double t) const;
  double sup_W() const;
};

/// Integrates the homogeneous problem from (C2, C3) period by period (exact
/// dry season, dopri5 wet season) until successive period-end states differ
/// by less than tol.
OdeOrbit periodic_ode_orbit(const ModelParams& params, double tol = 1e-11,
                            int max_periods = 100000, int wet_samples = 4000);

}  // namespace fom
