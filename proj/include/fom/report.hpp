#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fom/classifier.hpp"
#include "fom/forward_sim.hpp"
#include "fom/outcome.hpp"
#include "fom/periodic_state.hpp"

namespace fom {

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double x);

/// Columns t, r, s, sup_u, sup_v.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Columns t, u, v at the trajectory's probe abscissa.
void write_probe_csv(std::ostream& out, const Trajectory& traj);

/// One row per snapshot, one column per node of the moving grid (interior
/// plus both fronts). `component` is 'u' or 'v'.
void write_snapshot_matrix(std::ostream& out, const Trajectory& traj, char component);

/// Row i of the matrices lives on x_j = r + (s - r) j/(N+1): columns t, r, s, nodes.
void write_snapshot_meta(std::ostream& out, const Trajectory& traj);

/// Flat `key = value` lines; absent optionals are skipped.
void write_outcome(std::ostream& out, const Outcome& outcome);

/// Columns mu1, mu2, verdict in evaluation order.
void write_mu_probes(std::ostream& out, const MuStarResult& result, double rho);

/// Columns t, x, w, z over one period.
void write_orbit_csv(std::ostream& out, const PeriodicOrbit& orbit);

/// Blocks of t, x, u rows, one block per snapshot, for surface plots.
void write_surface(std::ostream& out, const Trajectory& traj);

/// File names written next to each other by `simulate`.
struct PlotFiles {
  std::string trajectory = "trajectory.csv";
  std::string snapshots_u = "snapshots_u.csv";
  std::string snapshots_meta = "snapshots_meta.csv";
  std::string surface = "surface_u.csv";
  std::string title;
};

/// gnuplot script with four panels: u over (x, t), u(x) at a few snapshot
/// times, sup u against t and the fronts r(t), s(t).
void write_plot_script(std::ostream& out, const PlotFiles& files, const Trajectory& traj);

}  // namespace fom
