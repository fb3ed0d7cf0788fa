#pragma once

#include "fom/model.hpp"

namespace fixture {

// Parameter sets of the three numerical experiments.

// Fast diffusion, H linear; used for the eigenvalue monotonicity sweeps.
inline fom::ModelParams monotonicity(double theta = 0.9, double tau = 5.0) {
  fom::ModelParams p;
  p.d1 = 5.0;
  p.d2 = 40.0;
  p.delta1 = 0.6;
  p.delta2 = 0.9;
  p.a11 = 0.2;
  p.a12 = 0.8;
  p.a22 = 0.3;
  p.T = 10.0;
  p.tau = tau;
  p.growth = fom::GrowthFunction::beverton_holt(1.5, 1.0);
  p.impulse = fom::ImpulseFunction::linear(theta);
  return p;
}

// The defaults of ModelParams; identity or saturating 4u/(10+u) impulse.
inline fom::ModelParams impulse_identity() { return fom::ModelParams{}; }

inline fom::ModelParams impulse_saturating() {
  fom::ModelParams p;
  p.impulse = fom::ImpulseFunction::saturating(4.0, 10.0);
  return p;
}

// Short period with stronger shedding; the dry-season length is the knob.
inline fom::ModelParams dry_length(double tau) {
  fom::ModelParams p;
  p.a12 = 1.7;
  p.delta1 = 0.9;
  p.delta2 = 0.9;
  p.T = 10.0;
  p.tau = tau;
  return p;
}

inline fom::InitialData initial() { return fom::InitialData::cosine(2.0, 0.4, 0.1); }

}  // namespace fixture
