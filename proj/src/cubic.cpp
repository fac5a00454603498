#include "hopfdde/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace hopfdde {

namespace {

using cplx = std::complex<double>;

cplx newton_polish(cplx z, double a, double b, double c) {
  const cplx g = ((z + a) * z + b) * z + c;
  const cplx dg = (3.0 * z + 2.0 * a) * z + b;
  if (std::abs(dg) == 0.0) return z;
  const cplx next = z - g / dg;
  // Keep the polished value only if it does not make the residual worse.
  const cplx g_next = ((next + a) * next + b) * next + c;
  return std::abs(g_next) <= std::abs(g) ? next : z;
}

double polish_real(double z, double a, double b, double c) {
  return newton_polish(cplx(z, 0.0), a, b, c).real();
}

/// Given an accurate real root r of z³ + a z² + b z + c, returns the roots of
/// the deflated quadratic z² + p z + q. q = -c/r is always stable; p is taken
/// from whichever of a + r and (q - b)/r suffers less cancellation.
std::pair<cplx, cplx> deflate(double r, double a, double b, double c, bool force_real) {
  const double q = -c / r;
  const double err_sum = std::max(std::abs(a), std::abs(r));
  const double err_quot = std::max(std::abs(q), std::abs(b)) / std::abs(r);
  const double p = err_sum <= err_quot ? a + r : (q - b) / r;
  double disc = p * p - 4.0 * q;
  if (disc < 0.0 && force_real) disc = 0.0;
  if (disc >= 0.0) {
    const double t = -0.5 * (p + std::copysign(std::sqrt(disc), p));
    return {cplx(t), cplx(t != 0.0 ? q / t : 0.0)};
  }
  const double im = 0.5 * std::sqrt(-disc);
  return {cplx(-0.5 * p, im), cplx(-0.5 * p, -im)};
}

}  // namespace

std::array<cplx, 3> solve_monic_cubic(double a, double b, double c) {
  // Depressed form z = t - a/3:  t³ + P t + Q = 0.
  const double shift = a / 3.0;
  const double P = b - a * a / 3.0;
  const double Q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = (Q * Q) / 4.0 + (P * P * P) / 27.0;

  std::array<cplx, 3> roots;
  if (P == 0.0 && Q == 0.0) {
    roots = {cplx(-shift), cplx(-shift), cplx(-shift)};
  } else if (disc <= 0.0) {
    // Three real roots: t = 2√(-P/3) cos(θ/3 - 2πk/3).
    const double rho = std::sqrt(-P / 3.0);
    double arg = (-Q / 2.0) / (rho * rho * rho);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg);
    for (int k = 0; k < 3; ++k) {
      const double t = 2.0 * rho * std::cos((theta - 2.0 * std::numbers::pi * k) / 3.0);
      roots[k] = cplx(t - shift, 0.0);
    }
  } else {
    // One real root, complex pair.
    const double sq = std::sqrt(disc);
    // Take the cube root of the non-cancelling branch, recover the other from AB = -P/3.
    const double A = std::cbrt(-Q / 2.0 - std::copysign(sq, Q));
    const double B = A != 0.0 ? -P / (3.0 * A) : 0.0;
    const double real_t = A + B;
    roots[0] = cplx(real_t - shift, 0.0);
    const double re = -real_t / 2.0 - shift;
    const double im = std::sqrt(3.0) / 2.0 * (A - B);
    roots[1] = cplx(re, im);
    roots[2] = cplx(re, -im);
  }

  // The closed forms lose relative accuracy on small roots when the root
  // magnitudes are widely spread; rebuild them from the dominant real root.
  if (!(P == 0.0 && Q == 0.0)) {
    const bool all_real = disc <= 0.0;
    std::size_t lead = 0;
    if (all_real) {
      for (std::size_t k = 1; k < 3; ++k) {
        if (std::abs(roots[k]) > std::abs(roots[lead])) lead = k;
      }
    }
    const double r = polish_real(roots[lead].real(), a, b, c);
    if (r != 0.0) {
      const auto [z1, z2] = deflate(r, a, b, c, all_real);
      roots = {cplx(r), z1, z2};
    }
  }

  for (auto& z : roots) {
    z = z.imag() == 0.0 ? cplx(polish_real(z.real(), a, b, c), 0.0) : newton_polish(z, a, b, c);
  }
  std::sort(roots.begin(), roots.end(), [](const cplx& x, const cplx& y) {
    const bool xr = x.imag() == 0.0;
    const bool yr = y.imag() == 0.0;
    if (xr != yr) return xr;
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return roots;
}

std::vector<double> real_roots_of_monic_cubic(double a, double b, double c, double rel_imag_tol) {
  std::vector<double> out;
  for (const auto& z : solve_monic_cubic(a, b, c)) {
    if (std::abs(z.imag()) <= rel_imag_tol * std::max(1.0, std::abs(z))) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hopfdde
