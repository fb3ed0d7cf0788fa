#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fom/forward_sim.hpp"
#include "fom/model.hpp"
#include "fom/periodic_state.hpp"

namespace fom {

/// Everything one CLI invocation needs: model, initial data, numerics and an
/// optional one-dimensional sweep.
struct ExperimentSpec {
  std::string name = "custom";
  ModelParams params;

  // Initial data u0 = u_amp cos(pi x/(2 s0)), v0 = v_amp cos(pi x/(2 s0)).
  double init_u_amp = 0.4;
  double init_v_amp = 0.1;

  // Growth and impulse descriptors; params.growth / params.impulse are
  // rebuilt from these by sync().
  std::string growth_kind = "beverton_holt";
  double growth_m = 1.7;
  double growth_a = 1.0;
  std::string impulse_kind = "identity";
  double impulse_theta = 1.0;
  double impulse_c = 4.0;
  double impulse_d = 10.0;

  // Eigenvalue interval; `eigen_l` > 0 means (-l, l) and overrides l1/l2.
  double eigen_l = 0.0;
  double eigen_l1 = -2.0;
  double eigen_l2 = 2.0;
  int eigen_N = 400;
  double eigen_dt = 0.0;

  SimConfig sim;
  IterateOptions iterate;

  // Classifier / threshold search.
  double rho = 0.0;  // <= 0 means mu2/mu1 of the base parameters
  double mu_lo = 0.05;
  double mu_hi = 20.0;
  double mu_resolution = 0.0;

  // Sweep axis: any numeric key of this file format.
  std::string sweep_key;
  std::vector<double> sweep_values;

  std::string output_dir;

  InitialData initial_data() const;
  double l1() const { return eigen_l > 0.0 ? -eigen_l : eigen_l1; }
  double l2() const { return eigen_l > 0.0 ? eigen_l : eigen_l2; }
  double effective_rho() const { return rho > 0.0 ? rho : params.mu2 / params.mu1; }

  /// Rebuilds params.growth and params.impulse from the descriptors.
  void sync();
};

/// Sets one `key = value` entry. Throws ConfigError for unknown keys or
/// malformed values; `line` (if > 0) is quoted in the message.
void set_value(ExperimentSpec& spec, const std::string& key, const std::string& value,
               int line = 0);

/// Parses the flat `key = value` format; `#` starts a comment.
ExperimentSpec parse_config(std::istream& in, const std::string& source = "<input>");
ExperimentSpec load_config(const std::string& path);

/// Writes every key with full precision; parse_config of the output
/// reproduces the same spec.
void write_config(std::ostream& out, const ExperimentSpec& spec);

/// Names accepted by preset().
std::vector<std::string> preset_names();
ExperimentSpec preset(const std::string& name);

/// Numeric keys that may be swept.
std::vector<std::string> numeric_keys();

}  // namespace fom
