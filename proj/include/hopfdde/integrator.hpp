#pragma once

// Fixed-step RK4 method of steps for the reduced delay system, and a
// cross-check integrator that evaluates the distributed term by quadrature
// over the stored past instead of carrying the chain variable w.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hopfdde/model.hpp"

namespace hopfdde {

/// Initial function on t ≤ 0. Only u and v matter before t = 0; w(0) comes
/// from the w0 policy: Consistent (w0 unset) gives u(0)v(0)/(mu + r).
struct HistorySpec {
  enum class Kind { Constant, Sampled };

  Kind kind = Kind::Constant;
  State constant_value;
  std::vector<double> sample_times;  ///< ascending, last entry 0
  std::vector<State> samples;
  std::optional<double> w0;

  static HistorySpec constant(double u0, double v0, std::optional<double> w0 = std::nullopt);
  static HistorySpec sampled(std::vector<double> times, std::vector<State> values,
                             std::optional<double> w0 = std::nullopt);

  /// History value at t ≤ 0 (linear interpolation between samples).
  State at(double t) const;

  /// State at t = 0 after applying the w0 policy.
  State initial_state(const ModelParams& p) const;

  /// Throws InsufficientHistoryError unless the history covers [-span, 0].
  void require_coverage(double span) const;
};

struct Trajectory {
  double t0 = 0.0;
  double t_end = 0.0;
  double step = 0.0;
  std::vector<State> states;       ///< node values, states[i] at t0 + i·step
  std::vector<State> derivatives;  ///< node derivatives, the cubic Hermite data

  std::size_t intervals() const { return states.empty() ? 0 : states.size() - 1; }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) * step; }

  /// Dense output. Exact node values are returned unchanged.
  State at(double t) const;
};

inline constexpr double kDivergenceBound = 1e6;

/// RK4 with h = s/steps_per_delay, so delayed nodes coincide with stored
/// nodes; half-step delayed values come from cubic Hermite interpolation.
/// For s = 0 the system is stepped as an ODE with h = 1/steps_per_delay.
/// Throws DivergenceError (with the blow-up time) if a state becomes
/// non-finite or exceeds kDivergenceBound.
Trajectory simulate(const ModelParams& p, const HistorySpec& history, double t_end, int steps_per_delay);

/// Same stepping for (u, v), with w(t) = ∫_0^T e^{-(mu+r)τ} u(t-τ)v(t-τ)dτ
/// evaluated by quadrature on the stored grid, T ≥ 30/(mu+r). The w column of
/// the result holds the quadrature value at each node.
Trajectory simulate_distributed(const ModelParams& p, const HistorySpec& history, double t_end,
                                int steps_per_delay);

/// CSV with header `t,u,v,w`, one row per node, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace hopfdde
