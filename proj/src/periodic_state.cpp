#include "fom/periodic_state.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fom/eigen_analytic.hpp"
#include "fom/error.hpp"
#include "fom/tridiagonal.hpp"

namespace fom {

namespace {

constexpr double kZeroSup = 1e-10;

int steps_for(double length, double dt, double rate) {
  const double limit = rate > 0.0 ? std::min(dt, 1.0 / rate) : dt;
  return std::max(1, static_cast<int>(std::ceil(length / limit - 1e-9)));
}

// Convergence bookkeeping shared by both iterations. With q the ratio of
// successive gaps, gap*q/(1-q) estimates the remaining distance to the limit
// once the contraction is geometric; twice that is used as the bound. When that tail accounts for the whole
// sup-norm the limit is extrapolated to zero.
struct Convergence {
  double prev_gap = -1.0;
  double prev_q = -1.0;
  double tail = 0.0;
  bool steady = false;

  bool update(double gap, double target) {
    bool done = false;
    steady = false;
    if (prev_gap > 0.0) {
      const double q = gap / prev_gap;
      if (q < 1.0) {
        tail = 2.0 * gap * q / (1.0 - q);
        done = gap < target && tail < target;
        steady = prev_q > 0.0 && std::abs(q - prev_q) < 1e-3 * (1.0 - q);
      }
      prev_q = q;
    }
    if (gap == 0.0) {
      tail = 0.0;
      done = true;
    }
    prev_gap = gap;
    return done;
  }

  bool extrapolates_to_zero(double sup, double target) const {
    return steady && std::abs(sup - 0.5 * tail) < std::max(target, 1e-2 * sup);
  }
};

}  // namespace

std::vector<double> PeriodicOrbit::w_center() const {
  std::vector<double> out(times.size(), 0.0);
  if (zero || N == 0) return out;
  const int mid = N / 2;
  for (int k = 0; k < levels(); ++k) out[static_cast<std::size_t>(k)] = w_at(k, mid);
  return out;
}

double PeriodicOrbit::sup() const {
  double m = 0.0;
  for (double e : w) m = std::max(m, e);
  for (double e : z) m = std::max(m, e);
  return m;
}

PeriodicOrbit monotone_iterate(const ModelParams& p, double l1, double l2,
                               const IterateOptions& opts) {
  if (!(l1 < l2)) throw std::invalid_argument("monotone_iterate: need l1 < l2");
  if (opts.N < 8) throw std::invalid_argument("monotone_iterate: need N >= 8");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("monotone_iterate: tol must be positive");

  const int N = opts.N;
  const std::size_t n = static_cast<std::size_t>(N);
  const double L = l2 - l1;
  const double h = L / (N + 1);
  const double gamma = p.delta1 + p.delta2 + p.a11 + p.a22;
  const double dt = opts.dt > 0.0 ? opts.dt : p.T / 2000.0;
  const int n_dry = steps_for(p.tau, dt, p.d2 / (h * h) + 0.5 * gamma);
  const int n_wet = steps_for(p.T - p.tau, dt, std::max(p.d1, p.d2) / (h * h) + 0.5 * gamma);
  const double dt_dry = p.tau / n_dry;
  const double dt_wet = (p.T - p.tau) / n_wet;
  const int levels = n_dry + n_wet + 1;

  PeriodicOrbit cur;
  cur.l1 = l1;
  cur.l2 = l2;
  cur.N = N;
  cur.times.resize(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) {
    cur.times[static_cast<std::size_t>(k)] =
        k <= n_dry ? k * dt_dry : p.tau + (k - n_dry) * dt_wet;
  }
  cur.times.back() = p.T;
  cur.w.assign(static_cast<std::size_t>(levels) * n, 0.0);
  cur.z.assign(static_cast<std::size_t>(levels) * n, 0.0);

  // With u* = 0 there is no positive equilibrium and (0, 0) is the only orbit.
  const AprioriBounds bounds = compute_bounds(p, 0.0, 0.0);
  const double C2 = bounds.C2;
  const double C3 = bounds.C3;
  if (!(C2 > 0.0)) {
    cur.zero = true;
    return cur;
  }

  if (opts.seed == IterateOptions::Seed::Upper) {
    std::fill(cur.w.begin(), cur.w.end(), C2);
    std::fill(cur.z.begin(), cur.z.end(), C3);
  } else {
    const EigenSolution eig = lambda1_interval(p, l1, l2);
    if (!(eig.lambda1 < 0.0)) {
      throw SolverError("monotone_iterate: lower seed needs lambda1 < 0 on the interval");
    }
    // e^{sigma t} moves half of the eigenvalue slack into the impulse wrap so
    // the concavity of H cannot break the lower-solution inequality there.
    const double sigma = -0.5 * eig.lambda1;
    double phi_max = 0.0, psi_max = 0.0;
    for (double t : cur.times) {
      const auto [a, b] = eig.profile(std::max(t, 0.0));
      phi_max = std::max(phi_max, a * std::exp(sigma * t));
      psi_max = std::max(psi_max, b * std::exp(sigma * t));
    }
    const double scale = opts.lower_scale > 0.0 ? opts.lower_scale : 1e-3;
    const double eps = scale * std::min(C2 / phi_max, C3 / psi_max);
    for (int k = 0; k < levels; ++k) {
      const double t = cur.times[static_cast<std::size_t>(k)];
      const auto [a, b] = eig.profile(t);
      const double g = eps * std::exp(sigma * t);
      for (int i = 0; i < N; ++i) {
        const double s = std::sin(std::numbers::pi * (i + 1) / (N + 1));
        cur.w[static_cast<std::size_t>(k) * n + i] = g * a * s;
        cur.z[static_cast<std::size_t>(k) * n + i] = g * b * s;
      }
    }
  }

  const CrankNicolson dry_w(n, 0.0, gamma, h, dt_dry);
  const CrankNicolson dry_z(n, p.d2, gamma, h, dt_dry);
  const CrankNicolson wet_w(n, p.d1, gamma, h, dt_wet);
  const CrankNicolson wet_z(n, p.d2, gamma, h, dt_wet);

  auto sources = [&](const PeriodicOrbit& prev, int k, bool dry, std::vector<double>& sw,
                     std::vector<double>& sz) {
    const double* w = prev.w.data() + static_cast<std::size_t>(k) * n;
    const double* z = prev.z.data() + static_cast<std::size_t>(k) * n;
    for (std::size_t i = 0; i < n; ++i) {
      if (dry) {
        sw[i] = (gamma - p.delta1) * w[i];
        sz[i] = (gamma - p.delta2) * z[i];
      } else {
        sw[i] = (gamma - p.a11) * w[i] + p.a12 * z[i];
        sz[i] = (gamma - p.a22) * z[i] + p.growth(w[i]);
      }
    }
  };

  PeriodicOrbit next = cur;
  std::vector<double> sw0(n), sz0(n), sw1(n), sz1(n), aw(n), az(n), ww(n), zz(n);
  Convergence conv;
  for (int it = 1; it <= opts.max_iter; ++it) {
    // Wrap: impulse on w, continuity of z, both from the previous iterate at T.
    const std::size_t last = static_cast<std::size_t>(levels - 1) * n;
    for (std::size_t i = 0; i < n; ++i) {
      ww[i] = p.impulse(cur.w[last + i]);
      zz[i] = cur.z[last + i];
    }
    std::copy(ww.begin(), ww.end(), next.w.begin());
    std::copy(zz.begin(), zz.end(), next.z.begin());
    for (int k = 0; k + 1 < levels; ++k) {
      const bool dry = k < n_dry;
      sources(cur, k, dry, sw0, sz0);
      sources(cur, k + 1, dry, sw1, sz1);
      for (std::size_t i = 0; i < n; ++i) {
        aw[i] = 0.5 * (sw0[i] + sw1[i]);
        az[i] = 0.5 * (sz0[i] + sz1[i]);
      }
      if (dry) {
        dry_w.step(ww, aw);
        dry_z.step(zz, az);
      } else {
        wet_w.step(ww, aw);
        wet_z.step(zz, az);
      }
      const std::size_t off = static_cast<std::size_t>(k + 1) * n;
      std::copy(ww.begin(), ww.end(), next.w.begin() + static_cast<std::ptrdiff_t>(off));
      std::copy(zz.begin(), zz.end(), next.z.begin() + static_cast<std::ptrdiff_t>(off));
    }

    double up = 0.0, down = 0.0;
    for (std::size_t j = 0; j < next.w.size(); ++j) {
      const double dw = next.w[j] - cur.w[j];
      const double dz = next.z[j] - cur.z[j];
      up = std::max({up, dw, dz});
      down = std::max({down, -dw, -dz});
    }
    next.max_increase.push_back(up);
    next.max_decrease.push_back(down);
    next.iterations = it;
    const double gap = std::max(up, down);
    next.final_gap = gap;
    std::swap(cur, next);
    next.max_increase = cur.max_increase;
    next.max_decrease = cur.max_decrease;
    if (opts.observer) opts.observer(it, cur);

    const double sup = cur.sup();
    if (sup < kZeroSup) {
      cur.zero = true;
      return cur;
    }
    const bool done = conv.update(gap, opts.tol);
    if (opts.seed == IterateOptions::Seed::Upper && conv.extrapolates_to_zero(sup, opts.tol)) {
      cur.zero = true;
      return cur;
    }
    if (done) {
      cur.zero = sup <= conv.tail + kZeroSup;
      return cur;
    }
  }
  std::ostringstream os;
  os << "monotone_iterate: no convergence after " << opts.max_iter
     << " sweeps, last gap " << cur.final_gap;
  throw SolverError(os.str());
}

// ---------------------------------------------------------------------------
// Homogeneous orbit

std::pair<double, double> OdeOrbit::value_at(double t) const {
  if (t < 0.0 || t > T) throw std::out_of_range("OdeOrbit::value_at: t outside [0, T]");
  if (zero) return {0.0, 0.0};
  if (t == 0.0) return {W0, Z0};
  if (t <= tau) return {W0_plus * std::exp(-delta1 * t), Z0 * std::exp(-delta2 * t)};
  const double hstep = wet_t[1] - wet_t[0];
  std::size_t k = static_cast<std::size_t>((t - tau) / hstep);
  k = std::min(k, wet_t.size() - 2);
  const double s = (t - wet_t[k]) / hstep;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  auto herm = [&](const std::vector<double>& y, const std::vector<double>& dy) {
    return h00 * y[k] + h10 * hstep * dy[k] + h01 * y[k + 1] + h11 * hstep * dy[k + 1];
  };
  return {herm(wet_W, wet_dW), herm(wet_Z, wet_dZ)};
}

double OdeOrbit::sup_W() const {
  if (zero) return 0.0;
  double m = std::max(W0, W0_plus);
  for (double e : wet_W) m = std::max(m, e);
  return m;
}

OdeOrbit periodic_ode_orbit(const ModelParams& p, double tol, int max_periods, int wet_samples) {
  namespace ode = boost::numeric::odeint;
  using State = std::array<double, 2>;
  if (wet_samples < 2) throw std::invalid_argument("periodic_ode_orbit: need >= 2 wet samples");

  OdeOrbit orb;
  orb.T = p.T;
  orb.tau = p.tau;
  orb.delta1 = p.delta1;
  orb.delta2 = p.delta2;

  auto rhs = [&p](const State& x, State& dx, double) {
    dx[0] = -p.a11 * x[0] + p.a12 * x[1];
    dx[1] = -p.a22 * x[1] + p.growth(std::max(x[0], 0.0));
  };

  const AprioriBounds b = compute_bounds(p, 0.0, 0.0);
  double W = b.C2;
  double Z = b.C3;
  if (!(W > 0.0)) {
    orb.zero = true;
    return orb;
  }

  std::vector<double> times(static_cast<std::size_t>(wet_samples) + 1);
  for (int k = 0; k <= wet_samples; ++k) {
    times[static_cast<std::size_t>(k)] = p.tau + (p.T - p.tau) * k / wet_samples;
  }
  std::vector<State> samples;
  samples.reserve(times.size());

  Convergence conv;
  for (int m = 1; m <= max_periods; ++m) {
    const double W_start = W, Z_start = Z;
    State x{p.impulse(W) * std::exp(-p.delta1 * p.tau), Z * std::exp(-p.delta2 * p.tau)};
    samples.clear();
    ode::integrate_times(ode::make_dense_output(1e-13, 1e-13, ode::runge_kutta_dopri5<State>()),
                         rhs, x, times.begin(), times.end(), 1e-3,
                         [&samples](const State& s, double) { samples.push_back(s); });
    W = samples.back()[0];
    Z = samples.back()[1];
    const double gap = std::max(std::abs(W - W_start), std::abs(Z - Z_start));
    orb.periods = m;
    orb.final_gap = gap;
    const double sup = std::max(W, Z);
    const bool small = std::max(W_start, Z_start) < kZeroSup && sup < kZeroSup;
    const bool done = conv.update(gap, tol);
    if (small || conv.extrapolates_to_zero(sup, tol)) {
      orb.zero = true;
      break;
    }
    if (done) {
      orb.zero = sup <= conv.tail + kZeroSup;
      break;
    }
    if (m == max_periods) {
      std::ostringstream os;
      os << "periodic_ode_orbit: no convergence after " << max_periods << " periods, gap " << gap;
      throw SolverError(os.str());
    }
  }

  orb.W0 = W;
  orb.Z0 = Z;
  orb.W0_plus = p.impulse(W);
  if (orb.zero) return orb;
  orb.wet_t = times;
  for (const State& s : samples) {
    State d{};
    rhs(s, d, 0.0);
    orb.wet_W.push_back(s[0]);
    orb.wet_Z.push_back(s[1]);
    orb.wet_dW.push_back(d[0]);
    orb.wet_dZ.push_back(d[1]);
  }
  return orb;
}

}  // namespace fom
