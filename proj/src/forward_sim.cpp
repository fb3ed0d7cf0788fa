#include "fom/forward_sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fom/eigen_analytic.hpp"
#include "fom/error.hpp"
#include "fom/tridiagonal.hpp"

namespace fom {

namespace {

constexpr double kClampFloor = -1e-12;
constexpr double kTimeEps = 1e-9;

double sup_of(const std::vector<double>& w) {
  double m = 0.0;
  for (double e : w) m = std::max(m, e);
  return m;
}

double interp(const SimState& st, const std::vector<double>& w, double x) {
  if (w.size() < 2 || !(x > st.r) || !(x < st.s)) return 0.0;
  const double pos = (x - st.r) / (st.s - st.r) * static_cast<double>(w.size() - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(pos), w.size() - 2);
  const double frac = pos - static_cast<double>(i);
  return (1.0 - frac) * w[i] + frac * w[i + 1];
}

// Zeroes round-off negatives; false if some node undershoots further.
bool clamp_nonnegative(std::vector<double>& w) {
  for (double& e : w) {
    if (e < 0.0) {
      if (e < kClampFloor) return false;
      e = 0.0;
    }
  }
  return true;
}

struct FrontSpeeds {
  double left = 0.0;   // r'(t) <= 0
  double right = 0.0;  // s'(t) >= 0
  int clamps = 0;
};

FrontSpeeds front_speeds(const std::vector<double>& u, const std::vector<double>& v, double width,
                         const ModelParams& p) {
  const std::size_t b = u.size() - 1;
  const double h = width / static_cast<double>(b);
  auto right_grad = [&](const std::vector<double>& w) {
    return (3.0 * w[b] - 4.0 * w[b - 1] + w[b - 2]) / (2.0 * h);
  };
  auto left_grad = [&](const std::vector<double>& w) {
    return (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * h);
  };
  FrontSpeeds fs;
  fs.right = -p.mu1 * right_grad(u) - p.mu2 * right_grad(v);
  fs.left = -p.mu1 * left_grad(u) - p.mu2 * left_grad(v);
  if (fs.right < 0.0) {
    fs.right = 0.0;
    ++fs.clamps;
  }
  if (fs.left > 0.0) {
    fs.left = 0.0;
    ++fs.clamps;
  }
  return fs;
}

// Advection plus reaction on the front-fixed grid, interior nodes only.
void explicit_terms(const std::vector<double>& u, const std::vector<double>& v, double width,
                    const FrontSpeeds& fs, const ModelParams& p, std::vector<double>& eu,
                    std::vector<double>& ev) {
  const std::size_t b = u.size() - 1;
  const double hx = 1.0 / static_cast<double>(b);
  eu.assign(u.size(), 0.0);
  ev.assign(u.size(), 0.0);
  for (std::size_t i = 1; i < b; ++i) {
    const double xi = static_cast<double>(i) * hx;
    const double adv = (xi * fs.right + (1.0 - xi) * fs.left) / width;
    eu[i] = adv * (u[i + 1] - u[i - 1]) / (2.0 * hx) - p.a11 * u[i] + p.a12 * v[i];
    ev[i] = adv * (v[i + 1] - v[i - 1]) / (2.0 * hx) - p.a22 * v[i] + p.growth(u[i]);
  }
}

// Trapezoidal diffusion w_t = (d/L^2) w_xixi + source with L0 on the explicit
// side and L1 on the implicit side.
void diffuse(const std::vector<double>& w0, const std::vector<double>& source, double d,
             double L0, double L1, double dt, std::vector<double>& out) {
  const std::size_t b = w0.size() - 1;
  const double hx2 = 1.0 / static_cast<double>(b * b);
  const double r0 = d * dt / (L0 * L0 * hx2);
  const double r1 = d * dt / (L1 * L1 * hx2);
  std::vector<double> rhs(b - 1);
  for (std::size_t i = 1; i < b; ++i) {
    rhs[i - 1] = w0[i] + 0.5 * r0 * (w0[i + 1] - 2.0 * w0[i] + w0[i - 1]) + dt * source[i];
  }
  ConstantTridiagonal(b - 1, 1.0 + r1, -0.5 * r1).solve(rhs);
  out.assign(w0.size(), 0.0);
  std::copy(rhs.begin(), rhs.end(), out.begin() + 1);
}

// One Heun/trapezoidal wet step. Leaves `st` untouched and returns false on
// an undershoot below the clamp floor.
bool wet_attempt(SimState& st, const ModelParams& p, double dt, long& clamps) {
  const double L0 = st.width();
  const FrontSpeeds f0 = front_speeds(st.u, st.v, L0, p);
  std::vector<double> eu0, ev0, eu1, ev1, us, vs;
  explicit_terms(st.u, st.v, L0, f0, p, eu0, ev0);

  const double Ls = L0 + dt * (f0.right - f0.left);
  diffuse(st.u, eu0, p.d1, L0, Ls, dt, us);
  diffuse(st.v, ev0, p.d2, L0, Ls, dt, vs);

  const FrontSpeeds f1 = front_speeds(us, vs, Ls, p);
  explicit_terms(us, vs, Ls, f1, p, eu1, ev1);
  for (std::size_t i = 0; i < eu0.size(); ++i) {
    eu0[i] = 0.5 * (eu0[i] + eu1[i]);
    ev0[i] = 0.5 * (ev0[i] + ev1[i]);
  }
  const double right = 0.5 * (f0.right + f1.right);
  const double left = 0.5 * (f0.left + f1.left);
  const double L1 = L0 + dt * (right - left);

  std::vector<double> un, vn;
  diffuse(st.u, eu0, p.d1, L0, L1, dt, un);
  diffuse(st.v, ev0, p.d2, L0, L1, dt, vn);
  if (!clamp_nonnegative(un) || !clamp_nonnegative(vn)) return false;

  st.u.swap(un);
  st.v.swap(vn);
  st.r += dt * left;
  st.s += dt * right;
  st.t += dt;
  clamps += f0.clamps + f1.clamps;
  return true;
}

bool dry_attempt(SimState& st, const ModelParams& p, double dt) {
  const std::size_t b = st.u.size() - 1;
  const double L = st.width();
  const double hx = 1.0 / static_cast<double>(b);
  std::vector<double> vn(st.v);
  CrankNicolson cn(b - 1, p.d2 / (L * L), p.delta2, hx, dt);
  cn.step(std::span<double>(vn.data() + 1, b - 1));
  if (!clamp_nonnegative(vn)) return false;
  st.v.swap(vn);
  const double decay = std::exp(-p.delta1 * dt);
  for (double& e : st.u) e *= decay;
  st.t += dt;
  return true;
}

template <class Attempt>
void with_halving(SimState& st, double dt, double dt_min, long* rejected, Attempt&& attempt) {
  if (attempt(st, dt)) return;
  if (rejected) ++*rejected;
  if (dt * 0.5 < dt_min) {
    std::ostringstream os;
    os << "step rejected at t=" << st.t << " (r=" << st.r << ", s=" << st.s
       << "): negative density persists below dt_min=" << dt_min;
    throw SolverError(os.str());
  }
  with_halving(st, 0.5 * dt, dt_min, rejected, attempt);
  with_halving(st, 0.5 * dt, dt_min, rejected, attempt);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Spreading:
      return "spreading";
    case Verdict::Vanishing:
      return "vanishing";
    case Verdict::ThresholdRegime:
      return "threshold_regime";
    case Verdict::Undecided:
      return "undecided";
  }
  return "unknown";
}

double SimState::sup_u() const { return sup_of(u); }
double SimState::sup_v() const { return sup_of(v); }
double SimState::u_at(double x) const { return interp(*this, u, x); }
double SimState::v_at(double x) const { return interp(*this, v, x); }

SimState SimState::initial(const ModelParams& params, const InitialData& init, int N) {
  if (N < 3) throw ConfigError("SimState::initial: need at least 3 interior nodes");
  SimState st;
  st.r = -params.s0;
  st.s = params.s0;
  st.u.assign(static_cast<std::size_t>(N) + 2, 0.0);
  st.v.assign(static_cast<std::size_t>(N) + 2, 0.0);
  for (int i = 1; i <= N; ++i) {
    const double x = st.x(static_cast<std::size_t>(i));
    st.u[static_cast<std::size_t>(i)] = std::max(0.0, init.u0(x));
    st.v[static_cast<std::size_t>(i)] = std::max(0.0, init.v0(x));
  }
  return st;
}

double SimConfig::effective_dt(const ModelParams& params) const {
  return dt > 0.0 ? dt : std::min(params.tau, params.T - params.tau) / 2000.0;
}

double SimConfig::effective_spread_width(const ModelParams& params) const {
  return spread_width > 0.0 ? spread_width : 8.0 * params.s0;
}

void Trajectory::record(const SimState& st) {
  t.push_back(st.t);
  r.push_back(st.r);
  s.push_back(st.s);
  const double su = st.sup_u();
  const double sv = st.sup_v();
  sup_u.push_back(su);
  sup_v.push_back(sv);
  probe_u.push_back(st.u_at(probe_x));
  probe_v.push_back(st.v_at(probe_x));
  if (bounds.C2 > 0.0) max_u_over_C2 = std::max(max_u_over_C2, su / bounds.C2);
  if (bounds.C3 > 0.0) max_v_over_C3 = std::max(max_v_over_C3, sv / bounds.C3);
}

void step_dry(SimState& state, const ModelParams& params, double dt) {
  state.phase = Phase::Dry;
  with_halving(state, dt, 1e-12 * std::max(1.0, dt), nullptr,
               [&](SimState& st, double h) { return dry_attempt(st, params, h); });
}

long step_wet(SimState& state, const ModelParams& params, double dt, double dt_min,
              long* rejected) {
  state.phase = Phase::Wet;
  long clamps = 0;
  with_halving(state, dt, dt_min, rejected,
               [&](SimState& st, double h) { return wet_attempt(st, params, h, clamps); });
  return clamps;
}

void apply_impulse(SimState& state, const ModelParams& params) {
  for (double& e : state.u) e = params.impulse(e);
}

EigenFacade analytic_eigen(const ModelParams& params) {
  return [params](double l1, double l2) { return lambda1_interval(params, l1, l2).lambda1; };
}

Outcome detect_outcome(const Trajectory& traj, const SimConfig& cfg, const ModelParams& params,
                       const EigenFacade& eigen) {
  Outcome out;
  if (traj.empty()) {
    out.notes.emplace_back("empty trajectory");
    return out;
  }
  const std::size_t last = traj.t.size() - 1;
  out.t_end = traj.t[last];
  out.r_end = traj.r[last];
  out.s_end = traj.s[last];
  out.sup_u_end = traj.sup_u[last];
  out.sup_v_end = traj.sup_v[last];

  const double width = traj.s[last] - traj.r[last];
  try {
    out.lambda1_front = eigen ? eigen(traj.r[last], traj.s[last])
                              : lambda1_interval(params, traj.r[last], traj.s[last]).lambda1;
  } catch (const Error& e) {
    out.notes.emplace_back(std::string("eigen solve on final interval failed: ") + e.what());
  }

  if (out.lambda1_front && width > cfg.effective_spread_width(params) && *out.lambda1_front < 0.0) {
    out.verdict = Verdict::Spreading;
    out.notes.emplace_back("width beyond spread_width with negative lambda1");
    return out;
  }
  if (traj.sup_u[last] + traj.sup_v[last] < cfg.vanish_eps) {
    const double since = traj.t[last] - params.T;
    if (since < -kTimeEps) {
      out.notes.emplace_back("densities small but less than one period simulated");
      return out;
    }
    const auto it = std::upper_bound(traj.t.begin(), traj.t.end(), since + kTimeEps);
    const std::size_t j = static_cast<std::size_t>(std::distance(traj.t.begin(), it)) - 1;
    const int nodes = traj.final_state.u.empty() ? cfg.N : traj.final_state.interior();
    const double h = width / (nodes + 1);
    const double moved = std::max(traj.s[last] - traj.s[j], traj.r[j] - traj.r[last]);
    if (moved < h) {
      out.verdict = Verdict::Vanishing;
      out.notes.emplace_back("densities below vanish_eps and fronts stalled over the last period");
    } else {
      out.notes.emplace_back("densities small but fronts still moving");
    }
    return out;
  }
  out.notes.emplace_back("no decisive evidence at horizon");
  return out;
}

Trajectory run(const ModelParams& params, const InitialData& init, const SimConfig& cfg) {
  if (cfg.N < 32) throw ConfigError("SimConfig: N must be at least 32");
  SimState st = SimState::initial(params, init, cfg.N);
  if (cfg.impulse_at_zero) apply_impulse(st, params);
  Trajectory traj = run_from(params, std::move(st), cfg);
  return traj;
}

Trajectory run_from(const ModelParams& params, SimState st, const SimConfig& cfg) {
  if (!(cfg.horizon >= 0.0)) throw ConfigError("SimConfig: horizon must be non-negative");
  if (cfg.record_every < 1) throw ConfigError("SimConfig: record_every must be >= 1");
  const double dt = cfg.effective_dt(params);
  if (!(dt > 0.0)) throw ConfigError("SimConfig: dt must be positive");

  Trajectory traj;
  traj.probe_x = cfg.probe_x;
  traj.bounds = compute_bounds(params, st.sup_u(), st.sup_v());
  traj.record(st);
  double next_snap = st.t;
  auto maybe_snapshot = [&] {
    if (cfg.snap_every > 0.0 && st.t >= next_snap - kTimeEps) {
      traj.snapshots.push_back({st.t, st.r, st.s, st.u, st.v});
      while (next_snap <= st.t + kTimeEps) next_snap += cfg.snap_every;
    }
  };
  maybe_snapshot();

  const EigenFacade eigen = analytic_eigen(params);
  long since_record = 0;
  while (st.t < cfg.horizon - kTimeEps) {
    const int m = static_cast<int>(std::floor((st.t + kTimeEps) / params.T));
    st.period = m;
    const double dry_end = m * params.T + params.tau;
    const double period_end = (m + 1) * params.T;
    const bool dry = st.t < dry_end - kTimeEps;
    const double seg_end = std::min(dry ? dry_end : period_end, cfg.horizon);
    const double span = seg_end - st.t;
    const long n = std::max(1L, static_cast<long>(std::ceil(span / dt - 1e-9)));
    const double h = span / static_cast<double>(n);

    for (long k = 0; k < n; ++k) {
      try {
        if (dry) {
          step_dry(st, params, h);
        } else {
          traj.front_clamps += step_wet(st, params, h, cfg.dt_min, &traj.rejected_steps);
        }
      } catch (const SolverError& e) {
        throw SimulationFailure(e.what(), st);
      }
      ++traj.steps;
      if (k + 1 == n) st.t = seg_end;
      if (++since_record >= cfg.record_every || k + 1 == n) {
        traj.record(st);
        since_record = 0;
      }
      maybe_snapshot();
    }

    if (!dry && std::abs(st.t - period_end) <= kTimeEps) {
      if (st.t < cfg.horizon - kTimeEps) {
        apply_impulse(st, params);
        st.period = m + 1;
        st.phase = Phase::Dry;
        traj.record(st);
      }
      if (cfg.stop_on_outcome) {
        traj.final_state = st;
        const Outcome o = detect_outcome(traj, cfg, params, eigen);
        if (o.verdict == Verdict::Spreading || o.verdict == Verdict::Vanishing) break;
      }
    }
  }
  traj.final_state = std::move(st);
  return traj;
}

}  // namespace fom
