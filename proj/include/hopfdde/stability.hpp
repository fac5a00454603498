#pragma once

// Linear stability of the positive equilibrium. The characteristic equation is
//
//   Δ(λ, s) = λ³ + p2 λ² + p1 λ + p0 + (q2 λ² + q1 λ + q0) e^{-λ s} = 0,
//
// and purely imaginary roots λ = iω correspond to positive roots z = ω² of
// G(z) = z³ + m z² + n z + h.

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hopfdde/model.hpp"

namespace hopfdde {

struct CharCoeffs {
  double p0 = 0.0, p1 = 0.0, p2 = 0.0;
  double q0 = 0.0, q1 = 0.0, q2 = 0.0;
};

struct GCubic {
  double m = 0.0, n = 0.0, h = 0.0;

  double value(double z) const { return ((z + m) * z + n) * z + h; }
  double derivative(double z) const { return (3.0 * z + 2.0 * m) * z + n; }
  /// |z|³ + |m|z² + |n||z| + |h|, the scale used for relative root tests.
  double magnitude(double z) const;
};

enum class Transversality { Positive, Negative, Degenerate };
std::string_view to_string(Transversality t);

struct HopfCandidate {
  double z = 0.0;
  double omega = 0.0;
  std::vector<double> delays;  ///< s^(j) for j = 0..j_max, spacing 2π/ω
  Transversality transversality = Transversality::Degenerate;
};

inline constexpr int kDefaultJMax = 3;

/// Coefficients at E*. Throws PreconditionError unless `estar` is an existing EStar.
CharCoeffs char_coeffs(const ModelParams& p, const Equilibrium& estar);

GCubic g_cubic(const CharCoeffs& c);

/// Δ(λ, s).
std::complex<double> char_value(std::complex<double> lambda, double s, const CharCoeffs& c);

/// Sum of the moduli of the terms of Δ(λ, s); scale for residual checks.
double char_scale(std::complex<double> lambda, double s, const CharCoeffs& c);

/// Routh–Hurwitz for the zero-delay cubic:
/// p0 + q0 > 0 and (p2 + q2)(p1 + q1) > p0 + q0.
bool h1_holds(const CharCoeffs& c);

/// Left-hand sides minus right-hand sides of the real/imaginary split at (ω, s):
///   q1 ω sin ωs + (q0 - q2 ω²) cos ωs - (p2 ω² - p0)
///   q1 ω cos ωs - (q0 - q2 ω²) sin ωs - (ω³ - p1 ω)
std::pair<double, double> split_residuals(double omega, double s, const CharCoeffs& c);

/// Sign of G'(z); Degenerate when |G'(z)| < 1e-9. Throws PreconditionError if
/// z is not a root of G to 1e-10 relative.
Transversality transversality_sign(double z, const CharCoeffs& c);

struct HopfSearch {
  std::vector<HopfCandidate> candidates;
  std::vector<std::string> rejected;  ///< one diagnostic per discarded root
};

/// Every positive root of G with its delay ladder, plus diagnostics for roots
/// that had to be discarded.
HopfSearch find_hopf_candidates(const CharCoeffs& c, int j_max = kDefaultJMax);

std::vector<HopfCandidate> hopf_candidates(const CharCoeffs& c, int j_max = kDefaultJMax);

struct CriticalDelay {
  double s0 = 0.0;
  HopfCandidate candidate;
};

/// Smallest j = 0 delay over all candidates; empty when there are none.
/// Throws PreconditionError when E* does not exist.
std::optional<CriticalDelay> s0(const ModelParams& p);

/// Verdict for E* at the delay p.s:
///   Stable when (H1) holds and s < s0 (or no crossing exists);
///   Unstable when p0 + q0 < 0 (a real positive root exists for every s), or
///   when (H1) holds, s > s0 and every crossing is rightward;
///   Undetermined otherwise, including when E* does not exist.
Stability estar_stability(const ModelParams& p);

}  // namespace hopfdde
