#include "fom/eigen_discrete.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fom/error.hpp"
#include "fom/tridiagonal.hpp"

namespace fom {

namespace {

// Smallest step count for `length` with step <= dt and, optionally,
// diffusivity*step/h^2 + decay*step/2 <= 1.
int step_count(double length, double dt, double diffusivity, double decay, double h,
               bool positive) {
  double limit = dt;
  if (positive) {
    const double rate = diffusivity / (h * h) + 0.5 * decay;
    if (rate > 0.0) limit = std::min(limit, 1.0 / rate);
  }
  return std::max(1, static_cast<int>(std::ceil(length / limit - 1e-9)));
}

// exp(R t) for a 2x2 matrix via e^{m t}[cosh(q t) I + sinh(q t)/q (R - m I)].
void exp2x2(double r11, double r12, double r21, double r22, double t, double& e11, double& e12,
            double& e21, double& e22) {
  const double m = 0.5 * (r11 + r22);
  const double half = 0.5 * (r11 - r22);
  const double q2 = half * half + r12 * r21;
  double ch, sh_over_q;
  if (q2 >= 0.0) {
    const double q = std::sqrt(q2);
    ch = std::cosh(q * t);
    sh_over_q = q * t > 1e-8 ? std::sinh(q * t) / q : t * (1.0 + q2 * t * t / 6.0);
  } else {
    const double q = std::sqrt(-q2);
    ch = std::cos(q * t);
    sh_over_q = std::sin(q * t) / q;
  }
  const double g = std::exp(m * t);
  e11 = g * (ch + sh_over_q * (r11 - m));
  e22 = g * (ch + sh_over_q * (r22 - m));
  e12 = g * sh_over_q * r12;
  e21 = g * sh_over_q * r21;
}

}  // namespace

MonodromyOperator::MonodromyOperator(const ModelParams& p, double l1, double l2, int N, double dt,
                                     bool positive_steps)
    : n_(N),
      l1_(l1),
      l2_(l2),
      h_((l2 - l1) / (N + 1)),
      T_(p.T),
      d1_(p.d1),
      d2_(p.d2),
      delta1_(p.delta1),
      delta2_(p.delta2),
      hprime0_(p.impulse.derivative_at_zero()) {
  if (N < 16) throw std::invalid_argument("MonodromyOperator: need N >= 16");
  if (!(l1 < l2)) throw std::invalid_argument("MonodromyOperator: need l1 < l2");
  if (!(p.tau > 0.0 && p.tau < p.T)) throw std::invalid_argument("MonodromyOperator: need 0 < tau < T");
  if (dt <= 0.0) dt = p.T / 2000.0;
  const double fp = p.growth.derivative_at_zero();
  if (dt * std::max(p.a12, fp) >= 1.0) {
    std::ostringstream os;
    os << "MonodromyOperator: dt*max(a12, f'(0)) = " << dt * std::max(p.a12, fp)
       << " >= 1; reduce dt";
    throw SolverError(os.str());
  }
  const double wet = p.T - p.tau;
  n_dry_ = step_count(p.tau, dt, p.d2, p.delta2, h_, positive_steps);
  n_wet_ = step_count(wet, dt, std::max(p.d1, p.d2), 0.0, h_, positive_steps);
  dt_dry_ = p.tau / n_dry_;
  dt_wet_ = wet / n_wet_;
  exp2x2(-p.a11, p.a12, fp, -p.a22, 0.5 * dt_wet_, e11_, e12_, e21_, e22_);
}

std::vector<double> MonodromyOperator::apply(const std::vector<double>& x) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  if (x.size() != 2 * n) throw std::invalid_argument("MonodromyOperator::apply: size mismatch");
  std::vector<double> y(x);
  std::span<double> phi(y.data(), n);
  std::span<double> psi(y.data() + n, n);

  // Impulse, then dry season: agents decay exactly, humans diffuse.
  const double dry_decay = hprime0_ * std::exp(-delta1_ * dt_dry_ * n_dry_);
  for (double& v : phi) v *= dry_decay;
  const CrankNicolson dry(n, d2_, delta2_, h_, dt_dry_);
  for (int k = 0; k < n_dry_; ++k) dry.step(psi);

  // Wet season: Strang split, exact linear coupling around CN diffusion.
  const CrankNicolson diff1(n, d1_, 0.0, h_, dt_wet_);
  const CrankNicolson diff2(n, d2_, 0.0, h_, dt_wet_);
  auto couple = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      const double a = phi[i], b = psi[i];
      phi[i] = e11_ * a + e12_ * b;
      psi[i] = e21_ * a + e22_ * b;
    }
  };
  for (int k = 0; k < n_wet_; ++k) {
    couple();
    diff1.step(phi);
    diff2.step(psi);
    couple();
  }
  return y;
}

DiscreteEigenResult lambda1_discrete(const MonodromyOperator& op, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("lambda1_discrete: tol must be positive");
  const int n = op.size();
  std::vector<double> x(2 * static_cast<std::size_t>(n));
  const double L = op.l2() - op.l1();
  for (int i = 0; i < n; ++i) {
    const double s = std::sin(std::numbers::pi * (op.node(i) - op.l1()) / L);
    x[i] = s;
    x[n + i] = s;
  }
  auto normalise = [](std::vector<double>& v) {
    double norm = 0.0;
    for (double e : v) norm += e * e;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw SolverError("lambda1_discrete: iterate collapsed to zero");
    for (double& e : v) e /= norm;
  };
  normalise(x);

  DiscreteEigenResult res;
  double prev = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    std::vector<double> y = op.apply(x);
    double rq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) rq += x[i] * y[i];
    normalise(y);
    x.swap(y);
    if (it > 1 && std::abs(rq - prev) < tol * std::abs(rq)) {
      res.rho = rq;
      res.iterations = it;
      break;
    }
    if (it == max_iter) {
      std::ostringstream os;
      os.precision(17);
      os << "lambda1_discrete: no convergence after " << max_iter
         << " iterations; last quotients " << prev << ", " << rq;
      throw SolverError(os.str());
    }
    prev = rq;
  }
  if (!(res.rho > 0.0)) throw SolverError("lambda1_discrete: non-positive spectral radius");
  res.lambda1 = -std::log(res.rho) / op.period();
  res.min_component = *std::min_element(x.begin(), x.end());
  res.eigenvector = std::move(x);
  return res;
}

double lambda1_richardson(const ModelParams& params, double l1, double l2, int N, double dt) {
  const double coarse = lambda1_discrete(MonodromyOperator(params, l1, l2, N, dt)).lambda1;
  const double fine = lambda1_discrete(MonodromyOperator(params, l1, l2, 2 * N + 1, dt)).lambda1;
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace fom
