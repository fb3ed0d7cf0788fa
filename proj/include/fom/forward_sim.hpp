#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fom/error.hpp"
#include "fom/model.hpp"
#include "fom/outcome.hpp"

namespace fom {

enum class Phase { Dry, Wet };

/// Densities on the front-fixed grid xi_i = i/(N+1), i = 0..N+1, mapped to
/// x = r + xi (s - r). End nodes hold the Dirichlet zeros.
struct SimState {
  double t = 0.0;
  Phase phase = Phase::Dry;
  double r = 0.0;
  double s = 0.0;
  std::vector<double> u;
  std::vector<double> v;
  int period = 0;

  int interior() const { return static_cast<int>(u.size()) - 2; }
  double width() const { return s - r; }
  double x(std::size_t i) const {
    return r + (s - r) * static_cast<double>(i) / static_cast<double>(u.size() - 1);
  }
  double sup_u() const;
  double sup_v() const;
  /// Linear interpolation in x; zero outside [r, s].
  double u_at(double x) const;
  double v_at(double x) const;

  /// Samples init on N interior nodes of [-s0, s0].
  static SimState initial(const ModelParams& params, const InitialData& init, int N);
};

struct SimConfig {
  int N = 400;
  /// <= 0 selects min(tau, T - tau)/2000.
  double dt = 0.0;
  double horizon = 200.0;
  double vanish_eps = 1e-4;
  /// <= 0 selects 8 s0 (four times the initial width).
  double spread_width = 0.0;
  /// Snapshot cadence in time units; <= 0 disables snapshots.
  double snap_every = 0.0;
  /// Trajectory sampling cadence in steps.
  int record_every = 1;
  /// Apply H at t = 0+ as well as at every later wrap.
  bool impulse_at_zero = true;
  /// Stop at the first period end where detect_outcome is decisive.
  bool stop_on_outcome = false;
  /// Abort when a rejected step would have to shrink below this.
  double dt_min = 1e-9;
  /// Point where u and v are probed every recorded step.
  double probe_x = 0.0;

  double effective_dt(const ModelParams& params) const;
  double effective_spread_width(const ModelParams& params) const;
};

struct Snapshot {
  double t = 0.0;
  double r = 0.0;
  double s = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<double> r;
  std::vector<double> s;
  std::vector<double> sup_u;
  std::vector<double> sup_v;
  std::vector<double> probe_u;
  std::vector<double> probe_v;
  std::vector<Snapshot> snapshots;

  SimState final_state;
  AprioriBounds bounds;
  double probe_x = 0.0;
  /// Largest u/C2 and v/C3 seen.
  double max_u_over_C2 = 0.0;
  double max_v_over_C3 = 0.0;
  /// Steps where a boundary gradient pointed the wrong way and the front
  /// speed was set to zero.
  long front_clamps = 0;
  long rejected_steps = 0;
  long steps = 0;

  bool empty() const { return t.empty(); }
  void record(const SimState& st);
};

/// Dry-season step: u decays exactly, v by Crank-Nicolson on the frozen
/// interval. Throws SolverError on a negative undershoot below -1e-12.
void step_dry(SimState& state, const ModelParams& params, double dt);

/// Wet-season step with moving fronts. Second order: trapezoidal diffusion,
/// Heun for fronts, advection and reaction. Oversized undershoots split the
/// step in halves down to dt_min. Returns the number of front clamps.
long step_wet(SimState& state, const ModelParams& params, double dt, double dt_min = 1e-9,
              long* rejected = nullptr);

/// u <- H(u) nodewise; nothing else changes.
void apply_impulse(SimState& state, const ModelParams& params);

using EigenFacade = std::function<double(double l1, double l2)>;

/// Default facade: semi-analytic lambda1 on (l1, l2).
EigenFacade analytic_eigen(const ModelParams& params);

/// Spreading if the current interval is wider than spread_width and its
/// lambda1 is negative; Vanishing if sup u + sup v < vanish_eps and neither
/// front moved by a grid spacing over the last period; Undecided otherwise.
Outcome detect_outcome(const Trajectory& traj, const SimConfig& cfg, const ModelParams& params,
                       const EigenFacade& eigen = {});

/// Raised by run/run_from when a step cannot be completed; carries the state
/// at the moment of failure for post-mortem dumps.
class SimulationFailure : public SolverError {
 public:
  SimulationFailure(const std::string& what, SimState state)
      : SolverError(what), state_(std::move(state)) {}
  const SimState& state() const { return state_; }

 private:
  SimState state_;
};

/// Integrates from t = 0 to cfg.horizon.
Trajectory run(const ModelParams& params, const InitialData& init, const SimConfig& cfg);

/// Same, starting from an explicit state (t, period and phase are honoured).
Trajectory run_from(const ModelParams& params, SimState state, const SimConfig& cfg);

}  // namespace fom
