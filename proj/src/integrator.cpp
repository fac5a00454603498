#include "hopfdde/integrator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "hopfdde/errors.hpp"
#include "hopfdde/format.hpp"
#include "hopfdde/kernels.hpp"

namespace hopfdde {

HistorySpec HistorySpec::constant(double u0, double v0, std::optional<double> w0) {
  HistorySpec h;
  h.kind = Kind::Constant;
  h.constant_value = {u0, v0, 0.0};
  h.w0 = w0;
  return h;
}

HistorySpec HistorySpec::sampled(std::vector<double> times, std::vector<State> values,
                                 std::optional<double> w0) {
  if (times.size() != values.size() || times.empty()) {
    throw PreconditionError("sampled history needs matching, non-empty time and value records");
  }
  if (!std::is_sorted(times.begin(), times.end()) ||
      std::adjacent_find(times.begin(), times.end()) != times.end()) {
    throw PreconditionError("sampled history times must be strictly increasing");
  }
  if (times.back() != 0.0) throw PreconditionError("sampled history must end at t = 0");
  HistorySpec h;
  h.kind = Kind::Sampled;
  h.sample_times = std::move(times);
  h.samples = std::move(values);
  h.w0 = w0;
  return h;
}

State HistorySpec::at(double t) const {
  if (kind == Kind::Constant) return constant_value;
  const double first = sample_times.front();
  if (t > 0.0 || t < first - 1e-12 * std::max(1.0, std::abs(first))) {
    std::ostringstream msg;
    msg << "history queried at t = " << t << " outside [" << first << ", 0]";
    throw InsufficientHistoryError(msg.str());
  }
  auto upper = std::upper_bound(sample_times.begin(), sample_times.end(), t);
  if (upper == sample_times.begin()) return samples.front();
  if (upper == sample_times.end()) return samples.back();
  const std::size_t hi = static_cast<std::size_t>(upper - sample_times.begin());
  const std::size_t lo = hi - 1;
  const double theta = (t - sample_times[lo]) / (sample_times[hi] - sample_times[lo]);
  return samples[lo] + theta * (samples[hi] - samples[lo]);
}

State HistorySpec::initial_state(const ModelParams& p) const {
  State x = at(0.0);
  x.w = w0 ? *w0 : x.u * x.v / p.kappa();
  return x;
}

void HistorySpec::require_coverage(double span) const {
  if (kind == Kind::Constant) return;
  if (sample_times.front() > -span * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "history starts at " << sample_times.front() << ", need coverage of [" << -span << ", 0]";
    throw InsufficientHistoryError(msg.str());
  }
}

namespace {

State hermite(const State& x0, const State& f0, const State& x1, const State& f1, double h, double theta) {
  const double t2 = theta * theta;
  const double t3 = t2 * theta;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + theta;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * x0 + (h * h10) * f0 + h01 * x1 + (h * h11) * f1;
}

State hermite_mid(const State& x0, const State& f0, const State& x1, const State& f1, double h) {
  return 0.5 * (x0 + x1) + (h / 8.0) * (f0 - f1);
}

std::size_t step_count(double t_end, double h) {
  const double ratio = t_end / h;
  double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) n = std::ceil(ratio);
  return static_cast<std::size_t>(std::max(1.0, n));
}

void guard(const State& x, double t) {
  if (!is_finite(x) || max_norm(x) > kDivergenceBound) {
    std::ostringstream msg;
    msg << "trajectory diverged at t = " << t;
    throw DivergenceError(msg.str(), t);
  }
}

// (u, v) on the uniform grid t_k = k·h, including the prehistory k < 0, plus
// the half-step values at t_k + h/2 used by the RK4 middle stages.
class DelayGrid {
 public:
  DelayGrid(const HistorySpec& history, double h, std::size_t pre, std::size_t steps)
      : pre_(pre), u_(pre + steps + 1), v_(pre + steps + 1), umid_(pre + steps), vmid_(pre + steps) {
    for (std::size_t j = 0; j < pre; ++j) {
      const double k = static_cast<double>(j) - static_cast<double>(pre);
      const State node = history.at(k * h);
      const State mid = history.at((k + 0.5) * h);
      u_[j] = node.u;
      v_[j] = node.v;
      umid_[j] = mid.u;
      vmid_[j] = mid.v;
    }
  }

  State node(long k) const { return {u_[index(k)], v_[index(k)], 0.0}; }
  State mid(long k) const { return {umid_[index(k)], vmid_[index(k)], 0.0}; }

  void set_node(std::size_t i, const State& x) {
    u_[pre_ + i] = x.u;
    v_[pre_ + i] = x.v;
  }
  void set_mid(std::size_t i, const State& x) {
    umid_[pre_ + i] = x.u;
    vmid_[pre_ + i] = x.v;
  }

  std::span<const double> u_nodes(long first, std::size_t count) const { return {u_.data() + index(first), count}; }
  std::span<const double> v_nodes(long first, std::size_t count) const { return {v_.data() + index(first), count}; }
  std::span<const double> u_mids(long first, std::size_t count) const { return {umid_.data() + index(first), count}; }
  std::span<const double> v_mids(long first, std::size_t count) const { return {vmid_.data() + index(first), count}; }

 private:
  std::size_t index(long k) const { return static_cast<std::size_t>(static_cast<long>(pre_) + k); }

  std::size_t pre_;
  std::vector<double> u_, v_, umid_, vmid_;
};

Trajectory make_trajectory(std::size_t steps, double h) {
  Trajectory traj;
  traj.t0 = 0.0;
  traj.step = h;
  traj.t_end = static_cast<double>(steps) * h;
  traj.states.resize(steps + 1);
  traj.derivatives.resize(steps + 1);
  return traj;
}

Trajectory simulate_ode(const ModelParams& p, const HistorySpec& history, double t_end, int steps_per_unit) {
  const double h = 1.0 / steps_per_unit;
  const std::size_t n = step_count(t_end, h);
  Trajectory traj = make_trajectory(n, h);
  auto& X = traj.states;
  auto& F = traj.derivatives;
  const auto f = [&p](const State& x) { return reduced_rhs(x, x, p); };

  X[0] = history.initial_state(p);
  guard(X[0], 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const State k1 = f(X[i]);
    F[i] = k1;
    const State k2 = f(X[i] + (0.5 * h) * k1);
    const State k3 = f(X[i] + (0.5 * h) * k2);
    const State k4 = f(X[i] + h * k3);
    X[i + 1] = X[i] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    guard(X[i + 1], traj.time(i + 1));
  }
  F[n] = f(X[n]);
  return traj;
}

}  // namespace

State Trajectory::at(double t) const {
  if (states.empty()) throw PreconditionError("empty trajectory");
  if (t < t0 || t > t_end) throw PreconditionError("dense output queried outside the trajectory span");
  const double pos = (t - t0) / step;
  std::size_t i = static_cast<std::size_t>(std::floor(pos));
  if (i >= intervals()) i = intervals() - (intervals() > 0 ? 1 : 0);
  if (t == time(i)) return states[i];
  if (i + 1 < states.size() && t == time(i + 1)) return states[i + 1];
  if (intervals() == 0) return states[0];
  const double theta = pos - static_cast<double>(i);
  return hermite(states[i], derivatives[i], states[i + 1], derivatives[i + 1], step, theta);
}

Trajectory simulate(const ModelParams& p, const HistorySpec& history, double t_end, int steps_per_delay) {
  validate(p);
  if (steps_per_delay < 20) throw PreconditionError("steps_per_delay must be at least 20");
  if (!(t_end > 0.0)) throw PreconditionError("t_end must be positive");
  if (p.s == 0.0) return simulate_ode(p, history, t_end, steps_per_delay);

  const std::size_t N = static_cast<std::size_t>(steps_per_delay);
  const double h = p.s / steps_per_delay;
  const std::size_t n = step_count(t_end, h);
  history.require_coverage(p.s);

  Trajectory traj = make_trajectory(n, h);
  auto& X = traj.states;
  auto& F = traj.derivatives;
  DelayGrid grid(history, h, N, n);

  X[0] = history.initial_state(p);
  guard(X[0], 0.0);
  grid.set_node(0, X[0]);

  for (std::size_t i = 0; i < n; ++i) {
    const long lag = static_cast<long>(i) - static_cast<long>(N);
    const State k1 = reduced_rhs(X[i], grid.node(lag), p);
    F[i] = k1;
    if (i > 0) grid.set_mid(i - 1, hermite_mid(X[i - 1], F[i - 1], X[i], F[i], h));

    const State delayed_mid = grid.mid(lag);
    const State k2 = reduced_rhs(X[i] + (0.5 * h) * k1, delayed_mid, p);
    const State k3 = reduced_rhs(X[i] + (0.5 * h) * k2, delayed_mid, p);
    const State k4 = reduced_rhs(X[i] + h * k3, grid.node(lag + 1), p);
    X[i + 1] = X[i] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    guard(X[i + 1], traj.time(i + 1));
    grid.set_node(i + 1, X[i + 1]);
  }
  F[n] = reduced_rhs(X[n], grid.node(static_cast<long>(n) - static_cast<long>(N)), p);
  return traj;
}

Trajectory simulate_distributed(const ModelParams& p, const HistorySpec& history, double t_end,
                                int steps_per_delay) {
  validate(p);
  if (steps_per_delay < 20) throw PreconditionError("steps_per_delay must be at least 20");
  if (!(t_end > 0.0)) throw PreconditionError("t_end must be positive");

  const bool delayed = p.s > 0.0;
  const std::size_t N = delayed ? static_cast<std::size_t>(steps_per_delay) : 0;
  const double h = delayed ? p.s / steps_per_delay : 1.0 / steps_per_delay;
  const std::size_t n = step_count(t_end, h);
  const std::size_t M = static_cast<std::size_t>(std::ceil(min_truncation_horizon(p) / h - 1e-9));
  const std::size_t pre = std::max(N, M);
  history.require_coverage(static_cast<double>(pre) * h);

  // weights[j] multiplies u v at lag j·h; the lag ≥ 1 part is stored oldest
  // first so it lines up with the grid windows.
  const std::vector<double> weights = exponential_trapezoid_weights(p.kappa(), h, M);
  const double w_now = weights[0];
  const std::vector<double> tail_weights(weights.rbegin(), weights.rend() - 1);

  Trajectory traj = make_trajectory(n, h);
  auto& X = traj.states;
  auto& F = traj.derivatives;
  DelayGrid grid(history, h, pre, n);

  const auto tail_nodes = [&](long k) {
    const long first = k - static_cast<long>(M);
    return kernels::weighted_product_sum(tail_weights, grid.u_nodes(first, M), grid.v_nodes(first, M));
  };
  const auto tail_mids = [&](long k) {
    const long first = k - static_cast<long>(M);
    return kernels::weighted_product_sum(tail_weights, grid.u_mids(first, M), grid.v_mids(first, M));
  };
  // (u, v) derivative with w from the quadrature; the w slot carries uv - κw.
  const auto rhs = [&](State x, const State& lagged, double tail) {
    x.w = w_now * x.u * x.v + tail;
    return reduced_rhs(x, delayed ? lagged : x, p);
  };

  X[0] = history.initial_state(p);
  grid.set_node(0, X[0]);
  double tail = tail_nodes(0);
  X[0].w = w_now * X[0].u * X[0].v + tail;
  guard(X[0], 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    const long k = static_cast<long>(i);
    const long lag = k - static_cast<long>(N);
    const State k1 = rhs(X[i], grid.node(lag), tail);
    F[i] = k1;
    if (i > 0) grid.set_mid(i - 1, hermite_mid(X[i - 1], F[i - 1], X[i], F[i], h));

    const double tail_half = tail_mids(k);
    const State delayed_mid = delayed ? grid.mid(lag) : State{};
    const State k2 = rhs(X[i] + (0.5 * h) * k1, delayed_mid, tail_half);
    const State k3 = rhs(X[i] + (0.5 * h) * k2, delayed_mid, tail_half);
    const double tail_next = tail_nodes(k + 1);
    const State k4 = rhs(X[i] + h * k3, delayed ? grid.node(lag + 1) : State{}, tail_next);

    State next = X[i] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    grid.set_node(i + 1, next);
    next.w = w_now * next.u * next.v + tail_next;
    X[i + 1] = next;
    guard(X[i + 1], traj.time(i + 1));
    tail = tail_next;
  }
  F[n] = rhs(X[n], grid.node(static_cast<long>(n) - static_cast<long>(N)), tail);
  return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,u,v,w\n";
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const State& x = traj.states[i];
    out << format_g17(traj.time(i)) << ',' << format_g17(x.u) << ',' << format_g17(x.v) << ','
        << format_g17(x.w) << '\n';
  }
}

}  // namespace hopfdde
