#include "hopfdde/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hopfdde/errors.hpp"
#include "hopfdde/kernels.hpp"

namespace hopfdde {

std::string_view to_string(CycleClass c) {
  switch (c) {
    case CycleClass::ConvergesToEquilibrium: return "converges_to_equilibrium";
    case CycleClass::SustainedOscillation: return "sustained_oscillation";
    case CycleClass::Diverges: return "diverges";
    case CycleClass::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct Peak {
  double time;
  double height;
};

// Local maxima by the three-point test, kept when their prominence relative to
// the neighbouring candidates exceeds kPeakProminence. Peak times are refined
// with a parabola through the three points.
std::vector<Peak> detect_peaks(const std::vector<double>& x, double t0, double step) {
  std::vector<std::size_t> cand;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (x[i] > x[i - 1] && x[i] >= x[i + 1]) cand.push_back(i);
  }
  std::vector<Peak> peaks;
  for (std::size_t c = 0; c < cand.size(); ++c) {
    const std::size_t i = cand[c];
    const std::size_t lo = c == 0 ? 0 : cand[c - 1];
    const std::size_t hi = c + 1 == cand.size() ? x.size() - 1 : cand[c + 1];
    const double left_min = *std::min_element(x.begin() + static_cast<long>(lo), x.begin() + static_cast<long>(i));
    const double right_min =
        *std::min_element(x.begin() + static_cast<long>(i) + 1, x.begin() + static_cast<long>(hi) + 1);
    if (x[i] - std::max(left_min, right_min) <= kPeakProminence) continue;

    const double ym = x[i - 1], y0 = x[i], yp = x[i + 1];
    const double denom = ym - 2.0 * y0 + yp;
    const double offset = denom != 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
    peaks.push_back({t0 + (static_cast<double>(i) + offset) * step, y0});
  }
  return peaks;
}

}  // namespace

CycleMetrics cycle_metrics(const Trajectory& traj, const State& equilibrium, double transient_fraction) {
  if (!(transient_fraction > 0.0 && transient_fraction < 1.0)) {
    throw PreconditionError("transient_fraction must lie in (0, 1)");
  }
  CycleMetrics out;
  const std::size_t total = traj.states.size();
  const std::size_t start = static_cast<std::size_t>(std::floor(transient_fraction * static_cast<double>(total)));
  if (total < 3 || total - start < 3) return out;

  const std::size_t count = total - start;
  std::vector<double> u(count), v(count), w(count);
  for (std::size_t i = 0; i < count; ++i) {
    const State& x = traj.states[start + i];
    if (!is_finite(x) || max_norm(x) > kDivergenceBound) {
      out.classification = CycleClass::Diverges;
      return out;
    }
    u[i] = x.u;
    v[i] = x.v;
    w[i] = x.w;
  }

  const auto half_range = [](const std::vector<double>& c) {
    const auto mm = kernels::minmax(c);
    return 0.5 * (mm.max - mm.min);
  };
  out.amplitude = {half_range(u), half_range(v), half_range(w)};

  const auto deviation = [&](std::size_t first, std::size_t n) {
    const std::span<const double> su(u.data() + first, n), sv(v.data() + first, n), sw(w.data() + first, n);
    return std::max({kernels::max_abs_deviation(su, equilibrium.u), kernels::max_abs_deviation(sv, equilibrium.v),
                     kernels::max_abs_deviation(sw, equilibrium.w)});
  };
  out.max_deviation = deviation(0, count);
  const std::size_t half = count / 2;
  const double early = deviation(0, half);
  const double late = deviation(half, count - half);

  std::vector<double> du(count);
  for (std::size_t i = 0; i < count; ++i) du[i] = u[i] - equilibrium.u;
  const auto peaks = detect_peaks(du, traj.time(start), traj.step);
  for (const auto& pk : peaks) out.peak_times.push_back(pk.time);

  double spread = 1.0;
  if (peaks.size() >= 2) {
    std::vector<double> gaps;
    for (std::size_t i = 1; i < peaks.size(); ++i) gaps.push_back(peaks[i].time - peaks[i - 1].time);
    const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
    double var = 0.0;
    for (double g : gaps) var += (g - mean) * (g - mean);
    var /= static_cast<double>(gaps.size());
    out.period = mean;
    out.n_periods_measured = static_cast<int>(gaps.size());
    spread = mean > 0.0 ? std::sqrt(var) / mean : 1.0;
  }

  if (out.max_deviation < kConvergenceDeviation && late <= early) {
    out.classification = CycleClass::ConvergesToEquilibrium;
    return out;
  }
  if (out.n_periods_measured >= kMinPeriods && spread < kMaxPeriodSpread) {
    double lo = peaks.front().height, hi = peaks.front().height;
    for (const auto& pk : peaks) {
      lo = std::min(lo, pk.height);
      hi = std::max(hi, pk.height);
    }
    if (hi > 0.0 && (hi - lo) / hi < kMaxPeakHeightSpread) {
      out.classification = CycleClass::SustainedOscillation;
      return out;
    }
  }
  if (out.n_periods_measured < 2 && late > 2.0 * early) {
    out.classification = CycleClass::Diverges;
    return out;
  }
  out.classification = CycleClass::Inconclusive;
  return out;
}

}  // namespace hopfdde
