#pragma once

#include <optional>
#include <random>

#include "hopfdde/model.hpp"
#include "hopfdde/stability.hpp"

namespace hopfdde::test {

/// The worked example: a1=0.05, a2=1.045, b1=0.95, b2=0.27, mu=2, r=4, r1=r2=0.5.
inline ModelParams reference_params(double s = 2.0) {
  ModelParams p;
  p.r1 = 0.5;
  p.r2 = 0.5;
  p.a1 = 0.05;
  p.a2 = 1.045;
  p.b1 = 0.95;
  p.b2 = 0.27;
  p.mu = 2.0;
  p.r = 4.0;
  p.s = s;
  return p;
}

/// Unconstrained draw over a wide box (b1, b2 of either sign).
inline ModelParams wide_draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.05, 3.0);
  std::uniform_real_distribution<double> any(-2.0, 2.0);
  std::uniform_real_distribution<double> nonneg(0.0, 3.0);
  ModelParams p;
  p.r1 = pos(rng);
  p.r2 = pos(rng);
  p.a1 = pos(rng);
  p.a2 = pos(rng);
  p.b1 = any(rng);
  p.b2 = any(rng);
  p.mu = nonneg(rng);
  p.r = pos(rng);
  p.s = nonneg(rng);
  return p;
}

/// Multiplicative jitter of the reference parameters by factors in [1-spread, 1+spread].
inline ModelParams jittered_reference(std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> f(1.0 - spread, 1.0 + spread);
  ModelParams p = reference_params();
  p.r1 *= f(rng);
  p.r2 *= f(rng);
  p.a1 *= f(rng);
  p.a2 *= f(rng);
  p.b1 *= f(rng);
  p.b2 *= f(rng);
  p.mu *= f(rng);
  p.r *= f(rng);
  return p;
}

/// Draws until E* exists and at least one Hopf candidate is found.
inline ModelParams draw_with_candidates(std::mt19937_64& rng, double spread = 0.3) {
  for (;;) {
    ModelParams p = jittered_reference(rng, spread);
    const Equilibrium e = positive_equilibrium(p);
    if (!e.exists) continue;
    if (!hopf_candidates(char_coeffs(p, e)).empty()) return p;
  }
}

}  // namespace hopfdde::test
