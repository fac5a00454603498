#include "hopfdde/normal_form.hpp"

#include <cmath>
#include <sstream>

#include "hopfdde/errors.hpp"

namespace hopfdde {

namespace {

constexpr double kRankTol = 1e-6;       // σ_min/σ_max accepted as a null direction
constexpr double kResonanceTol = 1e-8;  // σ_min/σ_max below which second order is singular
constexpr double kNormTol = 1e-12;
constexpr double kDirectionTol = 1e-12;

const cplx I(0.0, 1.0);

struct NullSpace {
  CVec3 vector;
  double ratio;  // σ_min / σ_max
};

NullSpace null_direction(const CMat3& m) {
  Eigen::JacobiSVD<CMat3> svd(m, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double ratio = sigma(0) > 0.0 ? sigma(2) / sigma(0) : 0.0;
  return {svd.matrixV().col(2), ratio};
}

double singular_ratio(const CMat3& m) {
  Eigen::JacobiSVD<CMat3> svd(m);
  const auto& sigma = svd.singularValues();
  return sigma(0) > 0.0 ? sigma(2) / sigma(0) : 0.0;
}

}  // namespace

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Supercritical: return "supercritical";
    case Direction::Subcritical: return "subcritical";
    case Direction::Degenerate: return "degenerate";
  }
  return "?";
}

Linearization linearize(const ModelParams& p, const Equilibrium& estar) {
  if (estar.label != EquilibriumLabel::EStar || !estar.exists) {
    throw PreconditionError("linearization needs the positive equilibrium E*");
  }
  const double u = estar.point.u;
  const double v = estar.point.v;

  Linearization lin;
  lin.A << p.r1 * (1.0 - 2.0 * p.a1 * u), 0.0, 0.0,
           0.0, p.r2 * (1.0 - 2.0 * p.a2 * v), p.b2 * p.r2,
           v, u, -p.kappa();
  lin.As << -p.b1 * p.r1 * v, -p.b1 * p.r1 * u, 0.0,
            0.0, 0.0, 0.0,
            0.0, 0.0, 0.0;
  lin.quadratic = {-p.a1 * p.r1, -p.b1 * p.r1, -p.a2 * p.r2, 1.0};
  return lin;
}

CMat3 critical_matrix(const Linearization& lin, double omega, double s) {
  const cplx phase = std::exp(-I * omega * s);
  return s * lin.A.cast<cplx>() + (s * phase) * lin.As.cast<cplx>() -
         (I * omega * s) * CMat3::Identity();
}

CVec3 quadratic_form(const QuadraticTable& q, const CVec3& x, const CVec3& y, const CVec3& xd,
                     const CVec3& yd) {
  CVec3 out;
  out(0) = q.uu * x(0) * y(0) + 0.5 * q.delayed_uv * (xd(0) * yd(1) + xd(1) * yd(0));
  out(1) = q.vv * x(1) * y(1);
  out(2) = 0.5 * q.uv * (x(0) * y(1) + x(1) * y(0));
  return out;
}

CVec3 right_eigvec(const Linearization& lin, double omega, double s) {
  const NullSpace ns = null_direction(critical_matrix(lin, omega, s));
  if (ns.ratio > kRankTol) {
    std::ostringstream msg;
    msg << "(omega, s) = (" << omega << ", " << s << ") is not a critical pair: sigma_min/sigma_max = "
        << ns.ratio;
    throw PreconditionError(msg.str());
  }
  if (std::abs(ns.vector(1)) < kNormTol * ns.vector.norm()) {
    throw DegenerateError("critical eigenvector has no v component");
  }
  return ns.vector / ns.vector(1);
}

CVec3 left_eigvec(const Linearization& lin, double omega, double s, const CVec3& c_vec) {
  const CMat3 m = critical_matrix(lin, omega, s);
  const NullSpace ns = null_direction(m.transpose());
  if (ns.ratio > kRankTol) {
    throw PreconditionError("critical matrix has no left null vector at the given pair");
  }
  const CVec3 d = ns.vector;  // d^T m = 0, stored as a column
  const cplx phase = std::exp(-I * omega * s);
  const CMat3 weight = CMat3::Identity() + (s * phase) * lin.As.cast<cplx>();
  const cplx norm = d.transpose() * weight * c_vec;
  if (std::abs(norm) < kNormTol) {
    throw DegenerateError("left eigenvector normalization vanishes (resonant normalization failure)");
  }
  return d / norm;
}

SecondOrder second_order(const Linearization& lin, double omega, double s, const CVec3& c_vec) {
  const cplx phase = std::exp(-I * omega * s);
  const cplx phase2 = phase * phase;
  const CVec3 c_bar = c_vec.conjugate();
  const CVec3 c_del = phase * c_vec;
  const CVec3 c_bar_del = std::conj(phase) * c_bar;

  // Harmonics of F(X1) for X1 = c z + c̄ z̄:  z² → B(c, c),  z z̄ → 2B(c, c̄).
  const CVec3 forcing2 = quadratic_form(lin.quadratic, c_vec, c_vec, c_del, c_del);
  const CVec3 forcing0 = 2.0 * quadratic_form(lin.quadratic, c_vec, c_bar, c_del, c_bar_del);

  const CMat3 Ac = lin.A.cast<cplx>();
  const CMat3 Asc = lin.As.cast<cplx>();
  const CMat3 m2 = (2.0 * I * omega * s) * CMat3::Identity() - s * Ac - (s * phase2) * Asc;
  const CMat3 m0 = -s * (Ac + Asc);

  if (singular_ratio(m2) < kResonanceTol) {
    throw ResonanceError("second-harmonic system is singular: 2i*omega is (near) a characteristic root");
  }
  if (singular_ratio(m0) < kResonanceTol) {
    throw ResonanceError("mean-flow system is singular: zero is (near) a characteristic root");
  }

  SecondOrder out;
  out.e_vec = m2.fullPivLu().solve(s * forcing2);
  // The constant harmonic is real: real matrix, real forcing.
  const Eigen::Matrix3d m0_real = -s * (lin.A + lin.As);
  const Eigen::Vector3d f_real = m0_real.fullPivLu().solve(s * forcing0.real());
  out.f_vec = f_real.cast<cplx>();
  return out;
}

Gammas gammas(const Linearization& lin, const CVec3& c_vec, const CVec3& d_vec, const CVec3& e_vec,
              const CVec3& f_vec, double omega, double s) {
  const cplx phase = std::exp(-I * omega * s);
  const CMat3 Ac = lin.A.cast<cplx>();
  const CMat3 Asc = lin.As.cast<cplx>();

  Gammas g;
  g.gamma1 = d_vec.transpose() * (Ac + phase * Asc) * c_vec;

  // z² z̄ coefficient of 2B(X1, X2), X2 = e z² + f z z̄ + ē z̄².
  const CVec3 c_bar = c_vec.conjugate();
  const CVec3 resonant =
      2.0 * quadratic_form(lin.quadratic, c_vec, f_vec, phase * c_vec, f_vec) +
      2.0 * quadratic_form(lin.quadratic, c_bar, e_vec, std::conj(phase) * c_bar, phase * phase * e_vec);
  g.gamma2 = -s * cplx(d_vec.transpose() * resonant);
  return g;
}

Direction classify(double chi1, double chi2) {
  const double product = chi1 * chi2;
  if (std::abs(product) <= kDirectionTol) return Direction::Degenerate;
  return product > 0.0 ? Direction::Supercritical : Direction::Subcritical;
}

NormalForm compute_normal_form(const ModelParams& p, double omega_star, double s_star) {
  const Linearization lin = linearize(p, positive_equilibrium(p));
  NormalForm nf;
  nf.omega_star = omega_star;
  nf.s_star = s_star;
  nf.c_vec = right_eigvec(lin, omega_star, s_star);
  nf.d_vec = left_eigvec(lin, omega_star, s_star, nf.c_vec);
  const SecondOrder so = second_order(lin, omega_star, s_star, nf.c_vec);
  nf.e_vec = so.e_vec;
  nf.f_vec = so.f_vec;
  const Gammas g = gammas(lin, nf.c_vec, nf.d_vec, nf.e_vec, nf.f_vec, omega_star, s_star);
  nf.gamma1 = g.gamma1;
  nf.gamma2 = g.gamma2;
  nf.chi1 = g.gamma1.real();
  nf.chi2 = g.gamma2.real();
  nf.direction = classify(nf.chi1, nf.chi2);
  return nf;
}

double predicted_amplitude(const NormalForm& nf, double delta) {
  if (nf.direction == Direction::Degenerate) {
    throw PreconditionError("amplitude prediction needs a non-degenerate direction");
  }
  const double ratio = delta * nf.chi1 / nf.chi2;
  return ratio > 0.0 ? std::sqrt(ratio) : 0.0;
}

State predicted_component_amplitudes(const NormalForm& nf, double delta) {
  const double rho = predicted_amplitude(nf, delta);
  return {2.0 * rho * std::abs(nf.c_vec(0)), 2.0 * rho * std::abs(nf.c_vec(1)),
          2.0 * rho * std::abs(nf.c_vec(2))};
}

}  // namespace hopfdde
