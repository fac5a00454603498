#pragma once

#include <string_view>
#include <vector>

#include "hopfdde/integrator.hpp"

namespace hopfdde {

enum class CycleClass { ConvergesToEquilibrium, SustainedOscillation, Diverges, Inconclusive };
std::string_view to_string(CycleClass c);

struct CycleMetrics {
  CycleClass classification = CycleClass::Inconclusive;
  State amplitude;               ///< half peak-to-peak per component over the retained window
  double period = 0.0;           ///< mean peak spacing of u, 0 when fewer than two peaks
  int n_periods_measured = 0;
  double max_deviation = 0.0;    ///< max-norm distance from the equilibrium over the window
  std::vector<double> peak_times;
};

inline constexpr double kConvergenceDeviation = 1e-3;
inline constexpr double kPeakProminence = 1e-6;
inline constexpr int kMinPeriods = 5;
inline constexpr double kMaxPeriodSpread = 0.01;     ///< std/mean of peak spacings
inline constexpr double kMaxPeakHeightSpread = 0.05; ///< relative spread of peak heights

/// Drops the leading transient_fraction of the nodes and classifies the rest:
///   ConvergesToEquilibrium: max deviation < 1e-3 and the second half of the
///     window deviates no more than the first;
///   SustainedOscillation: ≥ 5 periods of u, spacing std/mean < 1 %, peak
///     heights steady to 5 %;
///   Diverges: non-finite or out-of-bound states, or an aperiodic envelope
///     that keeps growing;
///   Inconclusive otherwise (also for windows shorter than three nodes).
CycleMetrics cycle_metrics(const Trajectory& traj, const State& equilibrium, double transient_fraction = 0.5);

}  // namespace hopfdde
