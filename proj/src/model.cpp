#include "fom/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "fom/error.hpp"

namespace fom {

namespace {

double central_difference(const std::function<double(double)>& g, double u) {
  const double h = (u > 0.0) ? std::min(1e-6 * std::max(1.0, u), 0.5 * u) : 1e-8;
  if (u <= 0.0) return (g(h) - g(0.0)) / h;
  return (g(u + h) - g(u - h)) / (2.0 * h);
}

std::vector<double> log_grid(double scale, int samples) {
  std::vector<double> grid(static_cast<std::size_t>(samples));
  const double lo = std::log(1e-6 * scale);
  const double hi = std::log(1e6 * scale);
  for (int i = 0; i < samples; ++i) {
    grid[static_cast<std::size_t>(i)] =
        std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1));
  }
  return grid;
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// GrowthFunction

GrowthFunction GrowthFunction::beverton_holt(double m, double a) {
  GrowthFunction g;
  g.kind_ = Kind::BevertonHolt;
  g.m_ = m;
  g.a_ = a;
  g.fprime0_ = m / a;
  g.label_ = "beverton_holt";
  return g;
}

GrowthFunction GrowthFunction::custom(std::function<double(double)> f, double derivative_at_zero,
                                      std::string label) {
  GrowthFunction g;
  g.kind_ = Kind::Custom;
  g.eval_ = std::move(f);
  g.fprime0_ = derivative_at_zero;
  g.label_ = std::move(label);
  return g;
}

double GrowthFunction::operator()(double u) const {
  if (kind_ == Kind::BevertonHolt) return m_ * u / (a_ + u);
  return eval_(u);
}

double GrowthFunction::derivative(double u) const {
  if (kind_ == Kind::BevertonHolt) return m_ * a_ / ((a_ + u) * (a_ + u));
  return central_difference(eval_, u);
}

// ---------------------------------------------------------------------------
// ImpulseFunction

ImpulseFunction ImpulseFunction::identity() {
  ImpulseFunction h;
  h.kind_ = Kind::Identity;
  h.hprime0_ = 1.0;
  h.label_ = "identity";
  return h;
}

ImpulseFunction ImpulseFunction::linear(double theta) {
  ImpulseFunction h;
  h.kind_ = Kind::Linear;
  h.theta_ = theta;
  h.hprime0_ = theta;
  h.label_ = "linear";
  return h;
}

ImpulseFunction ImpulseFunction::saturating(double c, double d) {
  ImpulseFunction h;
  h.kind_ = Kind::Saturating;
  h.c_ = c;
  h.d_ = d;
  h.hprime0_ = c / d;
  h.label_ = "saturating";
  return h;
}

ImpulseFunction ImpulseFunction::custom(std::function<double(double)> fn, double derivative_at_zero,
                                        std::string label) {
  ImpulseFunction h;
  h.kind_ = Kind::Custom;
  h.eval_ = std::move(fn);
  h.hprime0_ = derivative_at_zero;
  h.label_ = std::move(label);
  return h;
}

double ImpulseFunction::operator()(double u) const {
  switch (kind_) {
    case Kind::Identity:
      return u;
    case Kind::Linear:
      return theta_ * u;
    case Kind::Saturating:
      return c_ * u / (d_ + u);
    case Kind::Custom:
      break;
  }
  return eval_(u);
}

double ImpulseFunction::derivative(double u) const {
  switch (kind_) {
    case Kind::Identity:
      return 1.0;
    case Kind::Linear:
      return theta_;
    case Kind::Saturating:
      return c_ * d_ / ((d_ + u) * (d_ + u));
    case Kind::Custom:
      break;
  }
  return central_difference(eval_, u);
}

// ---------------------------------------------------------------------------
// InitialData

InitialData InitialData::cosine(double s0, double u_amp, double v_amp) {
  const double k = std::numbers::pi / (2.0 * s0);
  auto profile = [k, s0](double amp) {
    return [k, s0, amp](double x) {
      if (std::abs(x) >= s0) return 0.0;
      return amp * std::cos(k * x);
    };
  };
  return InitialData{profile(u_amp), profile(v_amp)};
}

double InitialData::sup_u0(double s0, int samples) const {
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = -s0 + 2.0 * s0 * i / (samples - 1);
    best = std::max(best, u0(x));
  }
  return best;
}

double InitialData::sup_v0(double s0, int samples) const {
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = -s0 + 2.0 * s0 * i / (samples - 1);
    best = std::max(best, v0(x));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "pass " : "FAIL ") << c.name;
    if (!c.passed && c.first_violation) os << " at u=" << *c.first_violation;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
  }
  return os.str();
}

ValidationReport validate_assumptions(const ModelParams& p, int samples) {
  ValidationReport report;
  samples = std::max(samples, 2);

  {
    ValidationCheck c{"coefficients", true, std::nullopt, ""};
    const std::pair<const char*, double> coeffs[] = {
        {"d1", p.d1},         {"d2", p.d2},         {"a11", p.a11}, {"a12", p.a12},
        {"a22", p.a22},       {"delta1", p.delta1}, {"delta2", p.delta2},
        {"mu1", p.mu1},       {"mu2", p.mu2}};
    for (const auto& [name, value] : coeffs) {
      if (!(value > 0.0) || !std::isfinite(value)) {
        c.passed = false;
        c.detail += std::string(c.detail.empty() ? "" : ", ") + name + "=" + fmt_double(value);
      }
    }
    report.checks.push_back(c);
  }
  report.checks.push_back({"season", p.tau > 0.0 && p.tau < p.T, std::nullopt,
                           "tau=" + fmt_double(p.tau) + " T=" + fmt_double(p.T)});
  report.checks.push_back({"s0", p.s0 > 0.0, std::nullopt, "s0=" + fmt_double(p.s0)});

  const double scale =
      p.growth.kind() == GrowthFunction::Kind::BevertonHolt && p.growth.a() > 0.0 ? p.growth.a() : 1.0;
  const auto grid = log_grid(scale, samples);
  const auto& f = p.growth;
  const auto& H = p.impulse;

  auto first_failure = [&](ValidationCheck c, auto&& bad) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (bad(i)) {
        c.passed = false;
        c.first_violation = grid[i];
        break;
      }
    }
    report.checks.push_back(std::move(c));
  };

  report.checks.push_back({"F.zero", std::abs(f(0.0)) <= 1e-14, std::nullopt, ""});
  first_failure({"F.increasing", true, std::nullopt, ""},
                [&](std::size_t i) { return !(f.derivative(grid[i]) > 0.0); });
  first_failure({"F.ratio_decreasing", true, std::nullopt, ""}, [&](std::size_t i) {
    if (i == 0) return false;
    return !(f(grid[i]) / grid[i] < f(grid[i - 1]) / grid[i - 1]);
  });
  {
    const double umax = grid.back();
    const double limit = f(umax) / umax;
    const double bound = p.a11 * p.a22 / p.a12;
    ValidationCheck c{"F.limit", limit < bound, std::nullopt,
                      "f(u)/u -> " + fmt_double(limit) + " vs a11*a22/a12=" + fmt_double(bound)};
    if (!c.passed) c.first_violation = umax;
    report.checks.push_back(c);
  }

  report.checks.push_back({"H.zero", std::abs(H(0.0)) <= 1e-14, std::nullopt, ""});
  first_failure({"H.increasing", true, std::nullopt, ""},
                [&](std::size_t i) { return !(H.derivative(grid[i]) > 0.0); });
  {
    // Strictly decreasing, or constant (identity / linear boundary case).
    std::vector<double> ratio(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) ratio[i] = H(grid[i]) / grid[i];
    bool all_strict = true;
    bool all_const = true;
    std::optional<double> first_bad;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double tol = 1e-13 * std::abs(ratio[i - 1]);
      const bool strict = ratio[i] < ratio[i - 1] - tol;
      const bool flat = std::abs(ratio[i] - ratio[i - 1]) <= tol;
      if (!strict && all_strict && !first_bad) first_bad = grid[i];
      all_strict = all_strict && strict;
      all_const = all_const && flat;
    }
    ValidationCheck c{"H.ratio_decreasing", all_strict || all_const, std::nullopt,
                      all_const ? "constant ratio (boundary case)" : ""};
    if (!c.passed) c.first_violation = first_bad;
    report.checks.push_back(c);
  }
  first_failure({"H.ratio_bounds", true, std::nullopt, ""}, [&](std::size_t i) {
    const double r = H(grid[i]) / grid[i];
    return !(r > 0.0 && r <= 1.0 + 1e-12);
  });

  return report;
}

ValidationReport validate_initial_data(const ModelParams& p, const InitialData& init, int samples) {
  ValidationReport report;
  const double s0 = p.s0;
  report.checks.push_back({"init.boundary",
                           std::abs(init.u0(-s0)) <= 1e-12 && std::abs(init.u0(s0)) <= 1e-12 &&
                               std::abs(init.v0(-s0)) <= 1e-12 && std::abs(init.v0(s0)) <= 1e-12,
                           std::nullopt, ""});
  ValidationCheck interior{"init.positive", true, std::nullopt, ""};
  for (int i = 1; i < samples - 1; ++i) {
    const double x = -s0 + 2.0 * s0 * i / (samples - 1);
    if (!(init.u0(x) > 0.0) || !(init.v0(x) > 0.0)) {
      interior.passed = false;
      interior.first_violation = x;
      break;
    }
  }
  report.checks.push_back(interior);
  return report;
}

// ---------------------------------------------------------------------------
// Bounds

double positive_equilibrium(const ModelParams& p) {
  const double target = p.a11 * p.a22 / p.a12;
  if (p.a12 * p.growth.derivative_at_zero() / (p.a11 * p.a22) <= 1.0) return 0.0;

  const auto& f = p.growth;
  auto g = [&](double u) { return f(u) / u - target; };
  const double scale =
      f.kind() == GrowthFunction::Kind::BevertonHolt && f.a() > 0.0 ? f.a() : 1.0;
  double lo = 1e-12 * scale;
  double hi = 10.0 * std::max(1.0, scale);
  if (!(g(lo) > 0.0)) throw SolverError("u* root search: f(u)/u is not above a11*a22/a12 near 0");
  int expansions = 0;
  while (g(hi) > 0.0) {
    if (++expansions > 60) throw SolverError("u* root search: no sign change of f(u)/u - a11*a22/a12");
    lo = hi;
    hi *= 10.0;
  }
  for (int it = 0; it < 400 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

AprioriBounds compute_bounds(const ModelParams& p, double sup_u0, double sup_v0) {
  AprioriBounds b;
  b.u_star = positive_equilibrium(p);
  b.C2 = std::max({b.u_star, sup_u0, p.a12 / p.a11 * sup_v0});
  b.C3 = std::max(sup_v0, p.growth(b.C2) / p.a22);
  return b;
}

AprioriBounds compute_bounds(const ModelParams& p, const InitialData& init) {
  return compute_bounds(p, init.sup_u0(p.s0), init.sup_v0(p.s0));
}

}  // namespace fom
