#pragma once

#include <optional>
#include <vector>

#include "fom/forward_sim.hpp"
#include "fom/model.hpp"
#include "fom/outcome.hpp"

namespace fom {

/// nu1 at or above -nu1_zero_tol counts as non-negative.
inline constexpr double kNu1ZeroTolerance = 1e-8;

/// Eigenvalue criteria: Vanishing if nu1 >= 0, Spreading if nu1 < 0 and
/// lambda1(-s0, s0) <= 0, ThresholdRegime otherwise. `init` is only checked
/// for consistency with s0; the verdict depends on it through s0 alone.
Outcome classify(const ModelParams& params, const InitialData& init);

struct MuProbe {
  double mu1 = 0.0;
  Verdict verdict = Verdict::Undecided;
};

struct MuStarResult {
  double lo = 0.0;  // largest mu1 seen vanishing
  double hi = 0.0;  // smallest mu1 seen spreading
  std::vector<MuProbe> probes;  // in evaluation order
  /// Verdicts sorted by mu1 read vanish...vanish, spread...spread.
  bool monotone = true;
  /// An Undecided probe stopped the bisection early.
  bool paused = false;
};

/// Forward-simulation verdict with mu2 = rho*mu1, run until the outcome is
/// decisive or cfg.horizon is reached.
Verdict probe_mu(const ModelParams& params, const InitialData& init, double mu1, double rho,
                 const SimConfig& cfg);

/// Bisection on mu1 over [mu_lo, mu_hi] until the bracket is narrower than
/// `resolution` (<= 0 selects 2^-10 of the initial width). Throws SolverError
/// when the endpoints do not straddle the threshold.
MuStarResult find_mu_star(const ModelParams& params, const InitialData& init, double rho,
                          double mu_lo, double mu_hi, const SimConfig& cfg,
                          double resolution = 0.0);

}  // namespace fom
