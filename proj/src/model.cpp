#include "hopfdde/model.hpp"

#include <algorithm>
#include <cmath>

#include "hopfdde/errors.hpp"
#include "hopfdde/kernels.hpp"

namespace hopfdde {

double& ModelParams::field(std::string_view name) {
  if (name == "r1") return r1;
  if (name == "r2") return r2;
  if (name == "a1") return a1;
  if (name == "a2") return a2;
  if (name == "b1") return b1;
  if (name == "b2") return b2;
  if (name == "mu") return mu;
  if (name == "r") return r;
  if (name == "s") return s;
  throw PreconditionError("unknown model parameter '" + std::string(name) + "'");
}

double ModelParams::field(std::string_view name) const {
  return const_cast<ModelParams&>(*this).field(name);
}

std::vector<std::string> invalid_fields(const ModelParams& p) {
  std::vector<std::string> bad;
  for (auto name : ModelParams::field_names) {
    const double value = p.field(name);
    bool ok = std::isfinite(value);
    if (name == "r1" || name == "r2" || name == "a1" || name == "a2" || name == "r") {
      ok = ok && value > 0.0;
    } else if (name == "mu" || name == "s") {
      ok = ok && value >= 0.0;
    }
    if (!ok) bad.emplace_back(name);
  }
  return bad;
}

void validate(const ModelParams& p) {
  const auto bad = invalid_fields(p);
  if (bad.empty()) return;
  std::string msg = "invalid model parameters:";
  for (const auto& name : bad) msg += " " + name;
  throw PreconditionError(msg);
}

double max_norm(const State& x) {
  return std::max({std::abs(x.u), std::abs(x.v), std::abs(x.w)});
}

bool is_finite(const State& x) {
  return std::isfinite(x.u) && std::isfinite(x.v) && std::isfinite(x.w);
}

std::string_view to_string(EquilibriumLabel label) {
  switch (label) {
    case EquilibriumLabel::E0: return "E0";
    case EquilibriumLabel::E1: return "E1";
    case EquilibriumLabel::E2: return "E2";
    case EquilibriumLabel::EStar: return "EStar";
  }
  return "?";
}

std::string_view to_string(Stability stability) {
  switch (stability) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::Undetermined: return "undetermined";
  }
  return "?";
}

bool positive_equilibrium_exists(const ModelParams& p) {
  const double lhs = p.a1 * p.a2 * p.kappa();
  return p.b1 < p.a2 && lhs > std::max(-p.b1 * p.b2, -p.a2 * p.b2);
}

Equilibrium positive_equilibrium(const ModelParams& p) {
  Equilibrium e;
  e.label = EquilibriumLabel::EStar;
  const double k = p.kappa();
  const double denom = p.a1 * p.a2 * k + p.b1 * p.b2;
  if (denom == 0.0) return e;  // measure-zero parameter set, reported as absent

  e.point.u = (p.a2 - p.b1) * k / denom;
  e.point.v = (p.a1 * k + p.b2) / denom;
  e.point.w = e.point.u * e.point.v / k;
  e.exists = positive_equilibrium_exists(p);
  return e;
}

std::vector<Equilibrium> equilibria(const ModelParams& p) {
  std::vector<Equilibrium> out;
  out.reserve(4);

  // (λ - r1)(λ - r2)(λ + μ + r): r1, r2 > 0 always give unstable roots.
  out.push_back({EquilibriumLabel::E0, {0.0, 0.0, 0.0}, true, Stability::Unstable});

  // (λ + r1)[λ² + (μ+r-r2)λ - (μ+r)r2 - b2 r2/a1]: the quadratic is negative
  // at 0 when μ + r + b2/a1 > 0.
  Equilibrium e1{EquilibriumLabel::E1, {1.0 / p.a1, 0.0, 0.0}, true, Stability::Undetermined};
  if (p.kappa() + p.b2 / p.a1 > 0.0) e1.stability = Stability::Unstable;
  out.push_back(e1);

  // (λ - r1 + b1 r1/a2)(λ + r2)(λ + μ + r)
  Equilibrium e2{EquilibriumLabel::E2, {0.0, 1.0 / p.a2, 0.0}, true, Stability::Undetermined};
  if (p.b1 > p.a2) e2.stability = Stability::Stable;
  else if (p.b1 < p.a2) e2.stability = Stability::Unstable;
  out.push_back(e2);

  out.push_back(positive_equilibrium(p));
  return out;
}

State reduced_rhs(const State& x, const State& delayed, const ModelParams& p) {
  return {
      p.r1 * x.u * (1.0 - p.a1 * x.u) - p.b1 * p.r1 * delayed.u * delayed.v,
      p.r2 * x.v * (1.0 - p.a2 * x.v) + p.b2 * p.r2 * x.w,
      x.u * x.v - p.kappa() * x.w,
  };
}

double min_truncation_horizon(const ModelParams& p) { return 30.0 / p.kappa(); }

std::vector<double> exponential_trapezoid_weights(double kappa, double step, std::size_t n) {
  std::vector<double> weights(n + 1, 0.0);
  if (n == 0) return weights;
  // On one segment of length h with z = κh:
  //   left  = ∫_0^h e^{-κx}(1 - x/h) dx,  right = ∫_0^h e^{-κx} x/h dx
  const double z = kappa * step;
  const double whole = -std::expm1(-z) / kappa;
  const double right = (-std::expm1(-z) - z * std::exp(-z)) / (kappa * z);
  const double left = whole - right;
  for (std::size_t j = 0; j < n; ++j) {
    const double decay = std::exp(-z * static_cast<double>(j));
    weights[j] += decay * left;
    weights[j + 1] += decay * right;
  }
  return weights;
}

QuadratureResult distributed_w_oracle(const HistoryWindow& history, const ModelParams& p) {
  if (history.u.size() != history.v.size()) {
    throw PreconditionError("history u and v records differ in length");
  }
  if (!(history.step > 0.0)) throw PreconditionError("history step must be positive");

  const std::size_t samples = history.u.size();
  const double span = samples > 0 ? static_cast<double>(samples - 1) * history.step : 0.0;
  const double needed = min_truncation_horizon(p);
  if (samples < 2 || span < needed * (1.0 - 1e-12)) {
    throw InsufficientHistoryError("history spans " + std::to_string(span) + " time units, need at least " +
                                   std::to_string(needed));
  }

  // Weights are indexed by lag; the window is stored oldest first.
  auto weights = exponential_trapezoid_weights(p.kappa(), history.step, samples - 1);
  std::reverse(weights.begin(), weights.end());

  QuadratureResult out;
  out.value = kernels::weighted_product_sum(weights, history.u, history.v);

  double sup = 0.0;
  for (std::size_t i = 0; i < samples; ++i) sup = std::max(sup, std::abs(history.u[i] * history.v[i]));
  out.truncation_bound = std::exp(-p.kappa() * span) * sup / p.kappa();
  return out;
}

}  // namespace hopfdde
