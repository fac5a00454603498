#pragma once

// Multiple-scales reduction at a Hopf point (ω*, s*). Time is rescaled by s,
// so the linear part reads  X' = s A X + s A_s X(t-1)  and the critical mode is
// c·exp(iω*s*t). The slow amplitude H obeys
//
//   H' = δ Γ1 H - Γ2 H² H̄,      δ = s - s*,
//
// with Γ1 = d·(A + A_s e^{-iω*s*})·c and Γ2 = -s*·d·M, where M is the resonant
// third-order forcing and d is the left null vector normalized by
// d·(I + s* A_s e^{-iω*s*})·c = 1.

#include <Eigen/Dense>
#include <complex>
#include <string_view>

#include "hopfdde/model.hpp"
#include "hopfdde/stability.hpp"

namespace hopfdde {

using cplx = std::complex<double>;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;

/// Coefficients of the quadratic nonlinearity F:
///   F_u = uu·u² + delayed_uv·u(t-s)v(t-s),  F_v = vv·v²,  F_w = uv·u·v.
struct QuadraticTable {
  double uu = 0.0;
  double delayed_uv = 0.0;
  double vv = 0.0;
  double uv = 0.0;
};

struct Linearization {
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d As = Eigen::Matrix3d::Zero();
  QuadraticTable quadratic;
};

enum class Direction { Supercritical, Subcritical, Degenerate };
std::string_view to_string(Direction d);

struct NormalForm {
  double omega_star = 0.0;
  double s_star = 0.0;
  CVec3 c_vec = CVec3::Zero();
  CVec3 d_vec = CVec3::Zero();
  CVec3 e_vec = CVec3::Zero();
  CVec3 f_vec = CVec3::Zero();
  cplx gamma1{};
  cplx gamma2{};
  double chi1 = 0.0;
  double chi2 = 0.0;
  Direction direction = Direction::Degenerate;
};

/// Throws PreconditionError unless `estar` is an existing EStar.
Linearization linearize(const ModelParams& p, const Equilibrium& estar);

/// s A + s A_s e^{-iωs} - iωs I.
CMat3 critical_matrix(const Linearization& lin, double omega, double s);

/// Symmetric bilinear form of F: B(x, y) with delayed arguments xd, yd, so
/// that F(X) = B(X, X) with X(t-1) feeding the delayed slots.
CVec3 quadratic_form(const QuadraticTable& q, const CVec3& x, const CVec3& y, const CVec3& xd,
                     const CVec3& yd);

/// Null vector of critical_matrix with second component 1. Throws
/// PreconditionError if the matrix is not rank deficient, DegenerateError if
/// the null vector has no v component.
CVec3 right_eigvec(const Linearization& lin, double omega, double s);

/// Left null vector d normalized so that d·(I + s A_s e^{-iωs})·c = 1. Throws
/// DegenerateError when the normalization denominator vanishes.
CVec3 left_eigvec(const Linearization& lin, double omega, double s, const CVec3& c_vec);

struct SecondOrder {
  CVec3 e_vec;
  CVec3 f_vec;
};

/// Solves (2iωs I - sA - sA_s e^{-2iωs}) e = s P₂ and (-sA - sA_s) f = s P₀,
/// with P₂ and P₀ the e^{2iωst} and constant harmonics of F on the critical
/// mode. Throws ResonanceError if either matrix is near singular.
SecondOrder second_order(const Linearization& lin, double omega, double s, const CVec3& c_vec);

struct Gammas {
  cplx gamma1;
  cplx gamma2;
};

Gammas gammas(const Linearization& lin, const CVec3& c_vec, const CVec3& d_vec, const CVec3& e_vec,
              const CVec3& f_vec, double omega, double s);

/// Supercritical iff χ1χ2 > 0, Subcritical iff < 0, Degenerate iff |χ1χ2| ≤ 1e-12.
Direction classify(double chi1, double chi2);

/// Full pipeline at a critical pair.
NormalForm compute_normal_form(const ModelParams& p, double omega_star, double s_star);

/// Steady amplitude ρ = √(δχ1/χ2) of the polar equation ρ' = δχ1ρ - χ2ρ³,
/// zero when δχ1/χ2 ≤ 0. Throws PreconditionError for a Degenerate direction.
double predicted_amplitude(const NormalForm& nf, double delta);

/// Half peak-to-peak oscillation of (u, v, w) about E*, 2ρ|c_i|.
State predicted_component_amplitudes(const NormalForm& nf, double delta);

}  // namespace hopfdde
