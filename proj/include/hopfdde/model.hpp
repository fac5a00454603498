#pragma once

// Two-information interaction model: parameters, equilibria and right-hand
// sides of the reduced (u, v, w) delay system.
//
//   u' = r1 u (1 - a1 u) - b1 r1 u(t-s) v(t-s)
//   v' = r2 v (1 - a2 v) + b2 r2 w
//   w' = u v - (mu + r) w
//
// w is the linear-chain variable of the distributed term with kernel
// exp(-(mu + r) tau), so the reduction above is exact.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hopfdde {

struct ModelParams {
  double r1 = 0.0;  ///< growth rate of u
  double r2 = 0.0;  ///< growth rate of v
  double a1 = 0.0;  ///< inverse carrying capacity of u
  double a2 = 0.0;  ///< inverse carrying capacity of v
  double b1 = 0.0;  ///< intervening rate of v on u (any sign)
  double b2 = 0.0;  ///< intervening rate of u on v (any sign)
  double mu = 0.0;  ///< loss rate
  double r = 0.0;   ///< exponential kernel rate
  double s = 0.0;   ///< discrete delay

  /// Decay rate of the chain variable, mu + r.
  double kappa() const noexcept { return mu + r; }

  static constexpr std::array<std::string_view, 9> field_names{"r1", "r2", "a1", "a2", "b1",
                                                               "b2", "mu", "r",  "s"};
  double& field(std::string_view name);
  double field(std::string_view name) const;
};

/// Names of the fields that break the parameter invariants (empty if valid).
std::vector<std::string> invalid_fields(const ModelParams& p);

/// Throws PreconditionError naming every invalid field.
void validate(const ModelParams& p);

struct State {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  friend State operator+(const State& a, const State& b) { return {a.u + b.u, a.v + b.v, a.w + b.w}; }
  friend State operator-(const State& a, const State& b) { return {a.u - b.u, a.v - b.v, a.w - b.w}; }
  friend State operator*(double k, const State& a) { return {k * a.u, k * a.v, k * a.w}; }
  friend bool operator==(const State&, const State&) = default;
};

double max_norm(const State& x);
bool is_finite(const State& x);

enum class EquilibriumLabel { E0, E1, E2, EStar };
enum class Stability { Stable, Unstable, Undetermined };

std::string_view to_string(EquilibriumLabel label);
std::string_view to_string(Stability stability);

struct Equilibrium {
  EquilibriumLabel label = EquilibriumLabel::E0;
  State point;
  bool exists = false;
  Stability stability = Stability::Undetermined;
};

/// E0, E1, E2 and E* in that order. E* is always listed; `exists` tells
/// whether it is a positive equilibrium. Its stability depends on the delay
/// and is left Undetermined here (see estar_stability in stability.hpp).
std::vector<Equilibrium> equilibria(const ModelParams& p);

/// The E* entry of equilibria(p).
Equilibrium positive_equilibrium(const ModelParams& p);

/// Existence predicate for the positive equilibrium:
/// b1 < a2 and a1 a2 (mu + r) > max(-b1 b2, -a2 b2).
bool positive_equilibrium_exists(const ModelParams& p);

/// Reduced right-hand side. Only delayed.u and delayed.v are read from `delayed`.
State reduced_rhs(const State& current, const State& delayed, const ModelParams& p);

/// Uniformly sampled (u, v) record ending at the evaluation time t.
/// u[0], v[0] sit at t - (size-1)*step; u.back(), v.back() sit at t.
struct HistoryWindow {
  double step = 0.0;
  std::span<const double> u;
  std::span<const double> v;
};

struct QuadratureResult {
  double value = 0.0;
  double truncation_bound = 0.0;  ///< bound on the neglected tail beyond the window
};

/// Minimum window length accepted by the distributed-term quadrature.
double min_truncation_horizon(const ModelParams& p);

/// Quadrature weights for  ∫_0^{n·step} exp(-kappa τ) g(τ) dτ  with g linear
/// between nodes τ_j = j·step (kernel integrated exactly per segment).
/// Returns n + 1 weights, index j multiplying g(τ_j).
std::vector<double> exponential_trapezoid_weights(double kappa, double step, std::size_t n);

/// ∫_0^T exp(-(mu+r) τ) u(t-τ) v(t-τ) dτ over the whole window, T = (size-1)·step.
/// Throws InsufficientHistoryError when T < min_truncation_horizon(p).
QuadratureResult distributed_w_oracle(const HistoryWindow& history, const ModelParams& p);

}  // namespace hopfdde
