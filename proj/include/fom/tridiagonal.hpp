#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fom {

/// Thomas algorithm. Solves sub[i]*x[i-1] + diag[i]*x[i] + sup[i]*x[i+1] = rhs[i]
/// in place (rhs becomes x). sub[0] and sup[n-1] are ignored.
void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                       std::span<const double> sup, std::span<double> rhs,
                       std::vector<double>& scratch);

/// Pre-factored constant-coefficient tridiagonal matrix with `diag` on the
/// diagonal and `off` on both off-diagonals.
class ConstantTridiagonal {
 public:
  ConstantTridiagonal() = default;
  ConstantTridiagonal(std::size_t n, double diag, double off);

  void solve(std::span<double> rhs) const;
  std::size_t size() const { return cprime_.size(); }

 private:
  double off_ = 0.0;
  std::vector<double> cprime_;
  std::vector<double> inv_denom_;
};

/// Crank-Nicolson stepper for w_t = d*w_xx - c*w (+ source) on n interior
/// nodes of spacing h with homogeneous Dirichlet ends.
class CrankNicolson {
 public:
  CrankNicolson() = default;
  CrankNicolson(std::size_t n, double diffusivity, double decay, double h, double dt);

  /// Advances w by one step.
  void step(std::span<double> w) const;
  /// Advances w by one step with a source term already averaged over the step.
  void step(std::span<double> w, std::span<const double> source) const;

  /// d*dt/h^2. The scheme preserves non-negativity when
  /// mesh_ratio() + decay*dt/2 <= 1.
  double mesh_ratio() const { return ratio_; }
  bool positivity_preserving() const { return explicit_diag_ >= 0.0; }

 private:
  double ratio_ = 0.0;
  double explicit_diag_ = 1.0;
  double explicit_off_ = 0.0;
  double dt_ = 0.0;
  ConstantTridiagonal implicit_;
  mutable std::vector<double> rhs_;
};

}  // namespace fom
