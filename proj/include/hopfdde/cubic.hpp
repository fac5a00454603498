#pragma once

#include <array>
#include <complex>
#include <vector>

namespace hopfdde {

/// Roots of z³ + a z² + b z + c by the closed form (trigonometric branch for
/// three real roots, Cardano otherwise). The two remaining roots are rebuilt by
/// deflating the dominant real root, then each root gets one Newton step.
/// Real roots come first, in ascending order.
std::array<std::complex<double>, 3> solve_monic_cubic(double a, double b, double c);

/// Real roots with |Im| ≤ rel_imag_tol·max(1, |z|), ascending.
std::vector<double> real_roots_of_monic_cubic(double a, double b, double c, double rel_imag_tol = 1e-9);

}  // namespace hopfdde
