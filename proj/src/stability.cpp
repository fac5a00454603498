#include "hopfdde/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hopfdde/cubic.hpp"
#include "hopfdde/errors.hpp"

namespace hopfdde {

namespace {

constexpr double kRootRelTol = 1e-10;
constexpr double kDegenerateSlope = 1e-9;
constexpr double kSplitDetMin = 1e-14;
constexpr double kPositiveRootMin = 1e-9;
constexpr double kResidualTol = 1e-8;

}  // namespace

double GCubic::magnitude(double z) const {
  const double a = std::abs(z);
  return a * a * a + std::abs(m) * a * a + std::abs(n) * a + std::abs(h);
}

std::string_view to_string(Transversality t) {
  switch (t) {
    case Transversality::Positive: return "positive";
    case Transversality::Negative: return "negative";
    case Transversality::Degenerate: return "degenerate";
  }
  return "?";
}

CharCoeffs char_coeffs(const ModelParams& p, const Equilibrium& estar) {
  if (estar.label != EquilibriumLabel::EStar || !estar.exists) {
    throw PreconditionError("characteristic coefficients need the positive equilibrium E*");
  }
  const double u = estar.point.u;
  const double v = estar.point.v;
  const double k = p.kappa();
  // Shorthands for the diagonal entries of the instantaneous Jacobian.
  const double du = p.r1 - 2.0 * p.a1 * p.r1 * u;   // ∂u'/∂u
  const double dv = p.r2 - 2.0 * p.a2 * p.r2 * v;   // ∂v'/∂v
  const double delayed = p.b1 * p.r1 * v;

  CharCoeffs c;
  c.p2 = k - p.r2 - p.r1 + 2.0 * p.a1 * p.r1 * u + 2.0 * p.a2 * p.r2 * v;
  c.p1 = -du * (k - dv) - k * dv - p.b2 * p.r2 * u;
  c.p0 = du * (k * dv + p.b2 * p.r2 * u);
  c.q2 = delayed;
  c.q1 = delayed * (k - dv);
  c.q0 = -delayed * k * dv;
  return c;
}

GCubic g_cubic(const CharCoeffs& c) {
  return {
      c.p2 * c.p2 - c.q2 * c.q2 - 2.0 * c.p1,
      c.p1 * c.p1 + 2.0 * c.q0 * c.q2 - c.q1 * c.q1 - 2.0 * c.p0 * c.p2,
      c.p0 * c.p0 - c.q0 * c.q0,
  };
}

std::complex<double> char_value(std::complex<double> lambda, double s, const CharCoeffs& c) {
  const auto poly = ((lambda + c.p2) * lambda + c.p1) * lambda + c.p0;
  const auto delayed = (c.q2 * lambda + c.q1) * lambda + c.q0;
  return poly + delayed * std::exp(-lambda * s);
}

double char_scale(std::complex<double> lambda, double s, const CharCoeffs& c) {
  const double a = std::abs(lambda);
  const double decay = std::exp(-lambda.real() * s);
  return a * a * a + std::abs(c.p2) * a * a + std::abs(c.p1) * a + std::abs(c.p0) +
         decay * (std::abs(c.q2) * a * a + std::abs(c.q1) * a + std::abs(c.q0));
}

bool h1_holds(const CharCoeffs& c) {
  const double a0 = c.p0 + c.q0;
  return a0 > 0.0 && (c.p2 + c.q2) * (c.p1 + c.q1) > a0;
}

std::pair<double, double> split_residuals(double omega, double s, const CharCoeffs& c) {
  const double w2 = omega * omega;
  const double sn = std::sin(omega * s);
  const double cs = std::cos(omega * s);
  const double a = c.q0 - c.q2 * w2;
  return {
      c.q1 * omega * sn + a * cs - (c.p2 * w2 - c.p0),
      c.q1 * omega * cs - a * sn - (w2 * omega - c.p1 * omega),
  };
}

namespace {

Transversality slope_sign(double slope) {
  if (std::abs(slope) < kDegenerateSlope) return Transversality::Degenerate;
  return slope > 0.0 ? Transversality::Positive : Transversality::Negative;
}

}  // namespace

Transversality transversality_sign(double z, const CharCoeffs& c) {
  const GCubic g = g_cubic(c);
  if (std::abs(g.value(z)) > kRootRelTol * std::max(1.0, g.magnitude(z))) {
    std::ostringstream msg;
    msg << "z = " << z << " is not a root of G (G(z) = " << g.value(z) << ")";
    throw PreconditionError(msg.str());
  }
  return slope_sign(g.derivative(z));
}

HopfSearch find_hopf_candidates(const CharCoeffs& c, int j_max) {
  if (j_max < 0) throw PreconditionError("j_max must be non-negative");
  const GCubic g = g_cubic(c);

  HopfSearch out;
  for (double z : real_roots_of_monic_cubic(g.m, g.n, g.h)) {
    if (z <= kPositiveRootMin) continue;
    std::ostringstream why;
    if (std::abs(g.value(z)) > kRootRelTol * std::max(1.0, g.magnitude(z))) {
      why << "z = " << z << ": cubic root failed the residual check";
      out.rejected.push_back(why.str());
      continue;
    }

    const double omega = std::sqrt(z);
    // Solve the split equations as a 2x2 system for (sin ωs, cos ωs):
    //   [ q1ω   a ] [S]   [p2ω² - p0]
    //   [ -a   q1ω] [C] = [ω³ - p1ω ],   a = q0 - q2ω².
    const double a = c.q0 - c.q2 * z;
    const double b = c.q1 * omega;
    const double det = b * b + a * a;
    if (det < kSplitDetMin) {
      why << "z = " << z << ": split system is singular (det = " << det << "), delay undetermined";
      out.rejected.push_back(why.str());
      continue;
    }
    const double rhs1 = c.p2 * z - c.p0;
    const double rhs2 = z * omega - c.p1 * omega;
    const double sin_ws = (b * rhs1 - a * rhs2) / det;
    const double cos_ws = (a * rhs1 + b * rhs2) / det;

    double angle = std::atan2(sin_ws, cos_ws);
    if (angle < 0.0) angle += 2.0 * std::numbers::pi;

    HopfCandidate cand;
    cand.z = z;
    cand.omega = omega;
    cand.transversality = slope_sign(g.derivative(z));
    bool ok = true;
    for (int j = 0; j <= j_max; ++j) {
      const double s = (angle + 2.0 * std::numbers::pi * j) / omega;
      const std::complex<double> lambda(0.0, omega);
      const double residual = std::abs(char_value(lambda, s, c));
      if (residual > kResidualTol * std::max(1.0, char_scale(lambda, s, c))) {
        why << "z = " << z << ", j = " << j << ": characteristic residual " << residual;
        out.rejected.push_back(why.str());
        ok = false;
        break;
      }
      cand.delays.push_back(s);
    }
    if (ok) out.candidates.push_back(std::move(cand));
  }
  return out;
}

std::vector<HopfCandidate> hopf_candidates(const CharCoeffs& c, int j_max) {
  return find_hopf_candidates(c, j_max).candidates;
}

std::optional<CriticalDelay> s0(const ModelParams& p) {
  const Equilibrium estar = positive_equilibrium(p);
  if (!estar.exists) throw PreconditionError("s0 requires the positive equilibrium to exist");
  const auto candidates = hopf_candidates(char_coeffs(p, estar));
  std::optional<CriticalDelay> best;
  for (const auto& cand : candidates) {
    if (!best || cand.delays.front() < best->s0) best = CriticalDelay{cand.delays.front(), cand};
  }
  return best;
}

Stability estar_stability(const ModelParams& p) {
  const Equilibrium estar = positive_equilibrium(p);
  if (!estar.exists) return Stability::Undetermined;
  const CharCoeffs c = char_coeffs(p, estar);
  if (c.p0 + c.q0 < 0.0) return Stability::Unstable;
  if (!h1_holds(c)) return Stability::Undetermined;

  const auto candidates = hopf_candidates(c);
  if (candidates.empty()) return Stability::Stable;
  double first = candidates.front().delays.front();
  bool all_rightward = true;
  for (const auto& cand : candidates) {
    first = std::min(first, cand.delays.front());
    all_rightward = all_rightward && cand.transversality == Transversality::Positive;
  }
  if (p.s < first) return Stability::Stable;
  if (p.s > first && all_rightward) return Stability::Unstable;
  return Stability::Undetermined;
}

}  // namespace hopfdde
