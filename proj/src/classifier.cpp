#include "fom/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fom/eigen_analytic.hpp"
#include "fom/error.hpp"

namespace fom {

Outcome classify(const ModelParams& params, const InitialData& init) {
  Outcome out;
  const ValidationReport init_report = validate_initial_data(params, init);
  if (!init_report.ok()) out.notes.push_back("initial data: " + init_report.summary());

  out.nu1 = nu1(params).lambda1;
  out.lambda1_s0 = lambda1_interval(params, -params.s0, params.s0).lambda1;

  if (*out.nu1 >= -kNu1ZeroTolerance) {
    out.verdict = Verdict::Vanishing;
    if (*out.nu1 < 0.0) {
      std::ostringstream os;
      os << "nu1 within " << kNu1ZeroTolerance << " of zero treated as non-negative";
      out.notes.push_back(os.str());
    } else {
      out.notes.emplace_back("nu1 >= 0: vanishing for every expansion capacity");
    }
  } else if (*out.lambda1_s0 <= 0.0) {
    out.verdict = Verdict::Spreading;
    out.notes.emplace_back("nu1 < 0 and lambda1(-s0, s0) <= 0: spreading for every expansion capacity");
  } else {
    out.verdict = Verdict::ThresholdRegime;
    out.notes.emplace_back("nu1 < 0 < lambda1(-s0, s0): outcome depends on the expansion capacities");
  }
  return out;
}

Verdict probe_mu(const ModelParams& params, const InitialData& init, double mu1, double rho,
                 const SimConfig& cfg) {
  ModelParams p = params;
  p.mu1 = mu1;
  p.mu2 = rho * mu1;
  SimConfig c = cfg;
  c.stop_on_outcome = true;
  c.snap_every = 0.0;
  const Trajectory traj = run(p, init, c);
  return detect_outcome(traj, c, p).verdict;
}

MuStarResult find_mu_star(const ModelParams& params, const InitialData& init, double rho,
                          double mu_lo, double mu_hi, const SimConfig& cfg, double resolution) {
  if (!(mu_lo > 0.0 && mu_lo < mu_hi)) {
    throw ConfigError("find_mu_star: need 0 < mu_lo < mu_hi");
  }
  if (!(rho > 0.0)) throw ConfigError("find_mu_star: rho must be positive");
  if (resolution <= 0.0) resolution = std::ldexp(mu_hi - mu_lo, -10);

  MuStarResult res;
  auto probe = [&](double mu) {
    const Verdict v = probe_mu(params, init, mu, rho, cfg);
    res.probes.push_back({mu, v});
    return v;
  };

  const Verdict v_lo = probe(mu_lo);
  const Verdict v_hi = probe(mu_hi);
  if (v_lo != Verdict::Vanishing || v_hi != Verdict::Spreading) {
    std::ostringstream os;
    os << "find_mu_star: bracket [" << mu_lo << ", " << mu_hi << "] does not straddle the threshold ("
       << to_string(v_lo) << " at mu_lo, " << to_string(v_hi) << " at mu_hi)";
    throw SolverError(os.str());
  }

  double lo = mu_lo, hi = mu_hi;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    const Verdict v = probe(mid);
    if (v == Verdict::Vanishing) {
      lo = mid;
    } else if (v == Verdict::Spreading) {
      hi = mid;
    } else {
      res.paused = true;
      break;
    }
  }
  res.lo = lo;
  res.hi = hi;

  std::vector<MuProbe> sorted = res.probes;
  std::sort(sorted.begin(), sorted.end(),
            [](const MuProbe& a, const MuProbe& b) { return a.mu1 < b.mu1; });
  bool seen_spread = false;
  for (const MuProbe& pr : sorted) {
    if (pr.verdict == Verdict::Spreading) seen_spread = true;
    if (pr.verdict == Verdict::Vanishing && seen_spread) res.monotone = false;
  }
  return res;
}

}  // namespace fom
