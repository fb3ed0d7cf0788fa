#include "fom/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace fom {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,r,s,sup_u,sup_v\n";
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    out << format_double(traj.t[i]) << ',' << format_double(traj.r[i]) << ','
        << format_double(traj.s[i]) << ',' << format_double(traj.sup_u[i]) << ','
        << format_double(traj.sup_v[i]) << '\n';
  }
}

void write_probe_csv(std::ostream& out, const Trajectory& traj) {
  out << "# x = " << format_double(traj.probe_x) << '\n' << "t,u,v\n";
  for (std::size_t i = 0; i < traj.t.size() && i < traj.probe_u.size(); ++i) {
    out << format_double(traj.t[i]) << ',' << format_double(traj.probe_u[i]) << ','
        << format_double(traj.probe_v[i]) << '\n';
  }
}

void write_snapshot_matrix(std::ostream& out, const Trajectory& traj, char component) {
  for (const Snapshot& snap : traj.snapshots) {
    const std::vector<double>& row = component == 'v' ? snap.v : snap.u;
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_double(row[j]);
    out << '\n';
  }
}

void write_snapshot_meta(std::ostream& out, const Trajectory& traj) {
  out << "t,r,s,nodes\n";
  for (const Snapshot& snap : traj.snapshots) {
    out << format_double(snap.t) << ',' << format_double(snap.r) << ',' << format_double(snap.s)
        << ',' << snap.u.size() << '\n';
  }
}

void write_outcome(std::ostream& out, const Outcome& o) {
  out << "verdict = " << to_string(o.verdict) << '\n';
  const auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) out << key << " = " << format_double(*v) << '\n';
  };
  opt("nu1", o.nu1);
  opt("lambda1_s0", o.lambda1_s0);
  opt("lambda1_front", o.lambda1_front);
  opt("mu_star_lo", o.mu_star_lo);
  opt("mu_star_hi", o.mu_star_hi);
  opt("t_end", o.t_end);
  opt("r_end", o.r_end);
  opt("s_end", o.s_end);
  opt("sup_u_end", o.sup_u_end);
  opt("sup_v_end", o.sup_v_end);
  for (const std::string& n : o.notes) out << "note = " << n << '\n';
}

void write_mu_probes(std::ostream& out, const MuStarResult& result, double rho) {
  out << "mu1,mu2,verdict\n";
  for (const MuProbe& p : result.probes) {
    out << format_double(p.mu1) << ',' << format_double(rho * p.mu1) << ',' << to_string(p.verdict)
        << '\n';
  }
}

void write_orbit_csv(std::ostream& out, const PeriodicOrbit& orbit) {
  out << "t,x,w,z\n";
  for (int k = 0; k < orbit.levels(); ++k) {
    for (int i = 0; i < orbit.N; ++i) {
      out << format_double(orbit.times[k]) << ',' << format_double(orbit.node(i)) << ','
          << format_double(orbit.zero ? 0.0 : orbit.w_at(k, i)) << ','
          << format_double(orbit.zero ? 0.0 : orbit.z_at(k, i)) << '\n';
    }
  }
}

void write_surface(std::ostream& out, const Trajectory& traj) {
  out << "# t,x,u\n";
  for (const Snapshot& snap : traj.snapshots) {
    const std::size_t n = snap.u.size();
    for (std::size_t j = 0; j < n; ++j) {
      const double x = snap.r + (snap.s - snap.r) * static_cast<double>(j) / static_cast<double>(n - 1);
      out << format_double(snap.t) << ',' << format_double(x) << ',' << format_double(snap.u[j])
          << '\n';
    }
    out << '\n';
  }
}

void write_plot_script(std::ostream& out, const PlotFiles& files, const Trajectory& traj) {
  const std::size_t n_snap = traj.snapshots.size();
  std::vector<std::size_t> picks;
  if (n_snap > 0) {
    for (std::size_t k = 0; k < 4; ++k) picks.push_back(std::min(n_snap - 1, k * (n_snap - 1) / 3));
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  }
  out << "# gnuplot script\n"
      << "set datafile separator ','\n"
      << "set terminal pngcairo size 1400,1000\n"
      << "set output '" << (files.title.empty() ? "figure" : files.title) << ".png'\n"
      << "set multiplot layout 2,2 title '" << files.title << "'\n";

  out << "set title 'u(x,t)'\nset xlabel 'x'\nset ylabel 't'\nset view map\nunset key\n";
  if (n_snap > 0) {
    out << "splot '" << files.surface << "' using 2:1:3 with pm3d\n";
  } else {
    out << "plot 0 notitle\n";
  }
  out << "unset view\n";

  out << "set title 'u(x) at fixed t'\nset xlabel 'x'\nset ylabel 'u'\nset key\n";
  if (picks.empty()) {
    out << "plot 0 notitle\n";
  } else {
    out << "plot ";
    for (std::size_t k = 0; k < picks.size(); ++k) {
      const Snapshot& s = traj.snapshots[picks[k]];
      const double n1 = static_cast<double>(s.u.size() - 1);
      out << (k ? ", " : "") << "'" << files.snapshots_u << "' matrix every :::" << picks[k]
          << "::" << picks[k] << " using (" << format_double(s.r) << "+$1*("
          << format_double(s.s - s.r) << ")/" << format_double(n1)
          << "):3 with lines title 't=" << format_double(s.t) << "'";
    }
    out << '\n';
  }

  out << "set title 'sup u'\nset xlabel 't'\nset ylabel 'sup u'\n"
      << "plot '" << files.trajectory << "' using 1:4 skip 1 with lines notitle\n";
  out << "set title 'fronts'\nset xlabel 't'\nset ylabel 'x'\n"
      << "plot '" << files.trajectory << "' using 1:2 skip 1 with lines title 'r(t)', '"
      << files.trajectory << "' using 1:3 skip 1 with lines title 's(t)'\n";
  out << "unset multiplot\n";
}

}  // namespace fom
