// fomctl: command-line driver for the two-season free-boundary model.
//
//   fomctl presets [--show NAME]
//   fomctl eigen    [--config F | --preset P] [--set k=v ...] [--l L | --l1 A --l2 B] [--limit] [--discrete]
//   fomctl simulate [...] [--horizon T] [--snap-every S] [--out DIR]
//   fomctl classify [...] [--rho R] [--find-mu-star] [--out DIR]
//   fomctl sweep    [...] [--parallel N] [--discrete] [--out DIR]
//
// Exit codes: 0 success, 1 usage or config error, 2 solver failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fom/classifier.hpp"
#include "fom/config.hpp"
#include "fom/eigen_analytic.hpp"
#include "fom/eigen_discrete.hpp"
#include "fom/error.hpp"
#include "fom/forward_sim.hpp"
#include "fom/report.hpp"
#include "fom/sweep.hpp"

namespace fs = std::filesystem;
using namespace fom;

namespace {

struct Common {
  std::string config;
  std::string preset;
  std::vector<std::string> sets;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool with_out) {
  auto* cfg = cmd->add_option("--config,-c", c.config, "flat key = value config file");
  auto* pre = cmd->add_option("--preset,-p", c.preset, "built-in experiment");
  cfg->excludes(pre);
  cmd->add_option("--set", c.sets, "override one key, e.g. --set tau=4.7")->take_all();
  if (with_out) cmd->add_option("--out,-o", c.out, "output directory (default: $FOM_OUTPUT_DIR, then output.dir, then .)");
}

ExperimentSpec load(const Common& c) {
  ExperimentSpec spec;
  if (!c.config.empty()) {
    spec = load_config(c.config);
  } else if (!c.preset.empty()) {
    spec = preset(c.preset);
  }
  for (const std::string& kv : c.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    std::string key = kv.substr(0, eq);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    set_value(spec, key, kv.substr(eq + 1));
  }
  spec.sync();
  return spec;
}

fs::path output_dir(const Common& c, const ExperimentSpec& spec) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("FOM_OUTPUT_DIR"); env && *env) return env;
  if (!spec.output_dir.empty()) return spec.output_dir;
  return ".";
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
  return f;
}

fs::path prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  return dir;
}

void check_params(const ExperimentSpec& spec) {
  const ValidationReport rep = validate_assumptions(spec.params);
  if (!rep.ok()) throw ConfigError("assumptions violated: " + rep.summary());
}

// ---- eigen -------------------------------------------------------------

struct EigenArgs {
  double l = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  bool limit = false;
  bool discrete = false;
  bool single = false;
};

void eigen_report(const ExperimentSpec& spec, const EigenArgs& a) {
  std::cout.precision(17);
  if (a.limit) {
    const EigenSolution s = nu1(spec.params);
    std::cout << "nu1 = " << format_double(s.lambda1) << '\n'
              << "case = " << to_string(s.case_id) << '\n';
    return;
  }
  const EigenSolution s = lambda1_interval(spec.params, spec.l1(), spec.l2());
  std::cout << "l1 = " << format_double(spec.l1()) << '\n'
            << "l2 = " << format_double(spec.l2()) << '\n'
            << "lambda1 = " << format_double(s.lambda1) << '\n'
            << "case = " << to_string(s.case_id) << '\n'
            << "k = " << format_double(s.k) << '\n'
            << "y = " << format_double(s.y) << '\n';
  if (a.discrete) {
    const double d = lambda1_richardson(spec.params, spec.l1(), spec.l2(), spec.eigen_N, spec.eigen_dt);
    std::cout << "lambda1_discrete = " << format_double(d) << '\n'
              << "gap = " << format_double(std::abs(d - s.lambda1)) << '\n';
  }
}

void eigen_sweep(const ExperimentSpec& spec, const EigenArgs& a) {
  std::cout << spec.sweep_key << (a.limit ? ",nu1" : ",lambda1");
  if (a.discrete && !a.limit) std::cout << ",lambda1_discrete,gap";
  std::cout << '\n';
  for (double value : spec.sweep_values) {
    ExperimentSpec row = spec;
    set_value(row, row.sweep_key, format_double(value));
    check_params(row);
    std::cout << format_double(value) << ',';
    if (a.limit) {
      std::cout << format_double(nu1(row.params).lambda1) << '\n';
      continue;
    }
    const double lam = lambda1_interval(row.params, row.l1(), row.l2()).lambda1;
    std::cout << format_double(lam);
    if (a.discrete) {
      const double d = lambda1_richardson(row.params, row.l1(), row.l2(), row.eigen_N, row.eigen_dt);
      std::cout << ',' << format_double(d) << ',' << format_double(std::abs(d - lam));
    }
    std::cout << '\n';
  }
}

// ---- simulate ----------------------------------------------------------

void dump_state(const fs::path& p, const SimState& st) {
  std::ofstream f = open_out(p);
  f << "# t = " << format_double(st.t) << ", r = " << format_double(st.r)
    << ", s = " << format_double(st.s) << ", period = " << st.period << '\n'
    << "x,u,v\n";
  for (std::size_t i = 0; i < st.u.size(); ++i) {
    f << format_double(st.x(i)) << ',' << format_double(st.u[i]) << ','
      << format_double(st.v[i]) << '\n';
  }
}

int simulate(ExperimentSpec spec, const Common& c) {
  check_params(spec);
  const fs::path dir = prepare_dir(output_dir(c, spec));
  {
    std::ofstream f = open_out(dir / "config.txt");
    write_config(f, spec);
  }
  Trajectory traj;
  try {
    traj = run(spec.params, spec.initial_data(), spec.sim);
  } catch (const SimulationFailure& e) {
    const fs::path dump = dir / "state_dump.csv";
    dump_state(dump, e.state());
    std::cerr << "solver failure: " << e.what() << "\nstate dumped to " << dump.string() << '\n';
    return 2;
  }
  const Outcome outcome = detect_outcome(traj, spec.sim, spec.params);

  PlotFiles files;
  files.title = spec.name;
  {
    std::ofstream f = open_out(dir / files.trajectory);
    write_trajectory_csv(f, traj);
  }
  {
    std::ofstream f = open_out(dir / "probe.csv");
    write_probe_csv(f, traj);
  }
  {
    std::ofstream f = open_out(dir / files.snapshots_u);
    write_snapshot_matrix(f, traj, 'u');
  }
  {
    std::ofstream f = open_out(dir / "snapshots_v.csv");
    write_snapshot_matrix(f, traj, 'v');
  }
  {
    std::ofstream f = open_out(dir / files.snapshots_meta);
    write_snapshot_meta(f, traj);
  }
  {
    std::ofstream f = open_out(dir / files.surface);
    write_surface(f, traj);
  }
  {
    std::ofstream f = open_out(dir / "plot.gp");
    write_plot_script(f, files, traj);
  }
  {
    std::ofstream f = open_out(dir / "outcome.txt");
    write_outcome(f, outcome);
  }
  write_outcome(std::cout, outcome);
  std::cout << "front_clamps = " << traj.front_clamps << '\n'
            << "rejected_steps = " << traj.rejected_steps << '\n'
            << "output = " << dir.string() << '\n';
  return 0;
}

// ---- classify ----------------------------------------------------------

int classify_cmd(const ExperimentSpec& spec, const Common& c, double rho_flag, bool find) {
  check_params(spec);
  Outcome o = classify(spec.params, spec.initial_data());
  const double rho = rho_flag > 0.0 ? rho_flag : spec.effective_rho();
  if (find) {
    if (o.verdict == Verdict::ThresholdRegime) {
      const MuStarResult r = find_mu_star(spec.params, spec.initial_data(), rho, spec.mu_lo,
                                          spec.mu_hi, spec.sim, spec.mu_resolution);
      o.mu_star_lo = r.lo;
      o.mu_star_hi = r.hi;
      if (!r.monotone) o.notes.emplace_back("probe verdicts were not monotone in mu1");
      if (r.paused) o.notes.emplace_back("an undecided probe stopped the bisection early");
      if (!c.out.empty() || std::getenv("FOM_OUTPUT_DIR") || !spec.output_dir.empty()) {
        const fs::path dir = prepare_dir(output_dir(c, spec));
        std::ofstream f = open_out(dir / "mu_probes.csv");
        write_mu_probes(f, r, rho);
      }
    } else {
      o.notes.emplace_back("threshold search skipped: verdict does not depend on mu1");
    }
  }
  write_outcome(std::cout, o);
  return 0;
}

// ---- sweep -------------------------------------------------------------

int sweep_cmd(const ExperimentSpec& spec, const Common& c, int parallel, bool discrete) {
  SweepOptions opts;
  opts.parallel = parallel;
  opts.discrete = discrete;
  const std::vector<SweepRow> rows = run_sweep(spec, opts);
  const bool to_file = !c.out.empty() || std::getenv("FOM_OUTPUT_DIR") || !spec.output_dir.empty();
  if (to_file) {
    const fs::path dir = prepare_dir(output_dir(c, spec));
    std::ofstream f = open_out(dir / "sweep.csv");
    write_sweep_csv(f, spec.sweep_key, rows, discrete);
    std::cout << "output = " << (dir / "sweep.csv").string() << '\n';
  } else {
    write_sweep_csv(std::cout, spec.sweep_key, rows, discrete);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-season impulsive free-boundary faecal-oral model"};
  app.require_subcommand(1);

  std::string show;
  auto* presets_cmd = app.add_subcommand("presets", "list built-in experiments");
  presets_cmd->add_option("--show", show, "print the full config of one preset");

  Common ce, cs, cc, cw;
  EigenArgs ea;
  auto* eigen_cmd = app.add_subcommand("eigen", "principal eigenvalue on a fixed interval");
  add_common(eigen_cmd, ce, false);
  auto* opt_l = eigen_cmd->add_option("--l", ea.l, "symmetric interval (-l, l)");
  auto* opt_l1 = eigen_cmd->add_option("--l1", ea.l1, "left end");
  auto* opt_l2 = eigen_cmd->add_option("--l2", ea.l2, "right end");
  opt_l1->needs(opt_l2);
  opt_l2->needs(opt_l1);
  opt_l->excludes(opt_l1)->excludes(opt_l2);
  eigen_cmd->add_flag("--limit", ea.limit, "print nu1, the l -> infinity limit");
  eigen_cmd->add_flag("--discrete", ea.discrete, "also run the monodromy oracle");
  eigen_cmd->add_flag("--single", ea.single, "ignore the sweep axis of the config");

  double horizon = -1.0;
  double snap_every = -1.0;
  auto* sim_cmd = app.add_subcommand("simulate", "forward free-boundary simulation");
  add_common(sim_cmd, cs, true);
  sim_cmd->add_option("--horizon", horizon, "final time");
  sim_cmd->add_option("--snap-every", snap_every, "snapshot cadence (0 disables)");

  double rho = 0.0;
  bool find = false;
  auto* cls_cmd = app.add_subcommand("classify", "spreading-vanishing criteria");
  add_common(cls_cmd, cc, true);
  cls_cmd->add_option("--rho", rho, "mu2/mu1 ratio for the threshold search");
  cls_cmd->add_flag("--find-mu-star", find, "bisect the expansion-capacity threshold");

  int parallel = 1;
  bool sweep_discrete = false;
  auto* sweep_cmd_p = app.add_subcommand("sweep", "one-parameter sweep");
  add_common(sweep_cmd_p, cw, true);
  sweep_cmd_p->add_option("--parallel,-j", parallel, "worker threads")->check(CLI::PositiveNumber);
  sweep_cmd_p->add_flag("--discrete", sweep_discrete, "add the monodromy oracle column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (presets_cmd->parsed()) {
      if (show.empty()) {
        for (const std::string& n : preset_names()) std::cout << n << '\n';
      } else {
        write_config(std::cout, preset(show));
      }
      return 0;
    }
    if (eigen_cmd->parsed()) {
      ExperimentSpec spec = load(ce);
      if (opt_l->count()) {
        spec.eigen_l = ea.l;
        ea.single = true;
      } else if (opt_l1->count()) {
        spec.eigen_l = 0.0;
        spec.eigen_l1 = ea.l1;
        spec.eigen_l2 = ea.l2;
        ea.single = true;
      }
      check_params(spec);
      if (!ea.single && !spec.sweep_key.empty()) {
        eigen_sweep(spec, ea);
      } else {
        eigen_report(spec, ea);
      }
      return 0;
    }
    if (sim_cmd->parsed()) {
      ExperimentSpec spec = load(cs);
      if (horizon >= 0.0) spec.sim.horizon = horizon;
      if (snap_every >= 0.0) spec.sim.snap_every = snap_every;
      return simulate(spec, cs);
    }
    if (cls_cmd->parsed()) return classify_cmd(load(cc), cc, rho, find);
    if (sweep_cmd_p->parsed()) return sweep_cmd(load(cw), cw, parallel, sweep_discrete);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 1;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
