#include "fom/tridiagonal.hpp"

#include <cassert>

namespace fom {

void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                       std::span<const double> sup, std::span<double> rhs,
                       std::vector<double>& scratch) {
  const std::size_t n = diag.size();
  assert(sub.size() == n && sup.size() == n && rhs.size() == n);
  if (n == 0) return;
  scratch.resize(n);
  double denom = diag[0];
  scratch[0] = sup[0] / denom;
  rhs[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - sub[i] * scratch[i - 1];
    scratch[i] = sup[i] / denom;
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i] * rhs[i + 1];
}

ConstantTridiagonal::ConstantTridiagonal(std::size_t n, double diag, double off)
    : off_(off), cprime_(n), inv_denom_(n) {
  if (n == 0) return;
  double denom = diag;
  inv_denom_[0] = 1.0 / denom;
  cprime_[0] = off * inv_denom_[0];
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag - off * cprime_[i - 1];
    inv_denom_[i] = 1.0 / denom;
    cprime_[i] = off * inv_denom_[i];
  }
}

void ConstantTridiagonal::solve(std::span<double> rhs) const {
  const std::size_t n = cprime_.size();
  assert(rhs.size() == n);
  if (n == 0) return;
  rhs[0] *= inv_denom_[0];
  for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - off_ * rhs[i - 1]) * inv_denom_[i];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cprime_[i] * rhs[i + 1];
}

CrankNicolson::CrankNicolson(std::size_t n, double diffusivity, double decay, double h, double dt)
    : ratio_(diffusivity * dt / (h * h)),
      explicit_diag_(1.0 - ratio_ - 0.5 * decay * dt),
      explicit_off_(0.5 * ratio_),
      dt_(dt),
      implicit_(n, 1.0 + ratio_ + 0.5 * decay * dt, -0.5 * ratio_),
      rhs_(n) {}

void CrankNicolson::step(std::span<double> w) const {
  const std::size_t n = w.size();
  assert(n == rhs_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? w[i - 1] : 0.0;
    const double right = i + 1 < n ? w[i + 1] : 0.0;
    rhs_[i] = explicit_diag_ * w[i] + explicit_off_ * (left + right);
  }
  implicit_.solve(rhs_);
  std::copy(rhs_.begin(), rhs_.end(), w.begin());
}

void CrankNicolson::step(std::span<double> w, std::span<const double> source) const {
  const std::size_t n = w.size();
  assert(n == rhs_.size() && source.size() == n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? w[i - 1] : 0.0;
    const double right = i + 1 < n ? w[i + 1] : 0.0;
    rhs_[i] = explicit_diag_ * w[i] + explicit_off_ * (left + right) + dt_ * source[i];
  }
  implicit_.solve(rhs_);
  std::copy(rhs_.begin(), rhs_.end(), w.begin());
}

}  // namespace fom
