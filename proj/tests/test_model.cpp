#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "hopfdde/errors.hpp"
#include "hopfdde/model.hpp"
#include "support.hpp"

using namespace hopfdde;
using hopfdde::test::reference_params;

namespace {

const Equilibrium& find(const std::vector<Equilibrium>& eqs, EquilibriumLabel label) {
  for (const auto& e : eqs) {
    if (e.label == label) return e;
  }
  throw std::logic_error("label missing");
}

}  // namespace

TEST_CASE("reference parameters give E* = (1, 1, 1/6)") {
  const Equilibrium e = positive_equilibrium(reference_params());
  CHECK(e.exists);
  CHECK(std::abs(e.point.u - 1.0) < 1e-12);
  CHECK(std::abs(e.point.v - 1.0) < 1e-12);
  CHECK(std::abs(e.point.w - 1.0 / 6.0) < 1e-12);
}

TEST_CASE("b1 = a2 puts u* on zero and E* does not exist") {
  ModelParams p = reference_params();
  p.b1 = p.a2;
  const Equilibrium e = positive_equilibrium(p);
  CHECK_FALSE(e.exists);
  CHECK(e.point.u == doctest::Approx(0.0));
}

TEST_CASE("vanishing denominator reports E* as nonexistent and Undetermined") {
  ModelParams p = reference_params();
  // a1 a2 (mu + r) + b1 b2 = 0
  p.b2 = -p.a1 * p.a2 * p.kappa() / p.b1;
  const Equilibrium e = positive_equilibrium(p);
  CHECK_FALSE(e.exists);
  CHECK(e.stability == Stability::Undetermined);
}

TEST_CASE("E0 is the origin and unstable") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const ModelParams p = test::wide_draw(rng);
    const auto eqs = equilibria(p);
    REQUIRE(eqs.size() == 4);
    const auto& e0 = find(eqs, EquilibriumLabel::E0);
    CHECK(e0.exists);
    CHECK(e0.point == State{});
    CHECK(e0.stability == Stability::Unstable);
  }
}

TEST_CASE("E1 and E2 verdicts follow the factorized characteristic polynomials") {
  ModelParams p = reference_params();
  auto eqs = equilibria(p);
  CHECK(find(eqs, EquilibriumLabel::E1).point == State{1.0 / p.a1, 0.0, 0.0});
  CHECK(find(eqs, EquilibriumLabel::E2).point == State{0.0, 1.0 / p.a2, 0.0});
  CHECK(find(eqs, EquilibriumLabel::E1).stability == Stability::Unstable);
  CHECK(find(eqs, EquilibriumLabel::E2).stability == Stability::Unstable);  // b1 < a2

  p.b1 = 1.2;
  CHECK(find(equilibria(p), EquilibriumLabel::E2).stability == Stability::Stable);
  p.b1 = p.a2;
  CHECK(find(equilibria(p), EquilibriumLabel::E2).stability == Stability::Undetermined);

  p = reference_params();
  p.b2 = -p.a1 * p.kappa() * 2.0;  // mu + r + b2/a1 < 0
  CHECK(find(equilibria(p), EquilibriumLabel::E1).stability == Stability::Undetermined);
}

TEST_CASE("existing equilibria annihilate the reduced right-hand side") {
  std::mt19937_64 rng(12);
  int with_estar = 0;
  for (int i = 0; i < 1000; ++i) {
    const ModelParams p = test::wide_draw(rng);
    for (const auto& e : equilibria(p)) {
      if (!e.exists) continue;
      if (e.label == EquilibriumLabel::EStar) ++with_estar;
      CHECK(max_norm(reduced_rhs(e.point, e.point, p)) < 1e-12 * std::max(1.0, max_norm(e.point) * max_norm(e.point)));
    }
  }
  CHECK(with_estar > 100);
}

TEST_CASE("E* existence predicate, positivity and the w* identity") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const ModelParams p = test::wide_draw(rng);
    const double k = p.kappa();
    const bool predicate = p.b1 < p.a2 && p.a1 * p.a2 * k > std::max(-p.b1 * p.b2, -p.a2 * p.b2);
    const Equilibrium e = positive_equilibrium(p);
    CHECK(e.exists == predicate);
    CHECK(positive_equilibrium_exists(p) == predicate);
    if (e.exists) {
      CHECK(e.point.u > 0.0);
      CHECK(e.point.v > 0.0);
      CHECK(e.point.w > 0.0);
      CHECK(e.point.w == e.point.u * e.point.v / k);
    }
  }
}

TEST_CASE("reduced_rhs by hand substitution") {
  const ModelParams p = reference_params();
  const State x{1.0, 1.0, 0.0};
  const State d = reduced_rhs(x, x, p);
  CHECK(d.u == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(d.v == doctest::Approx(-0.0225).epsilon(1e-14));
  CHECK(d.w == doctest::Approx(1.0).epsilon(1e-15));

  const Equilibrium e = positive_equilibrium(p);
  CHECK(max_norm(reduced_rhs(e.point, e.point, p)) < 1e-15);

  // Only delayed.u and delayed.v enter, and only through the u equation.
  const State cur{0.7, 1.3, 0.2};
  const State del{0.4, 0.9, 55.0};
  const State out = reduced_rhs(cur, del, p);
  CHECK(out.u == doctest::Approx(p.r1 * 0.7 * (1.0 - p.a1 * 0.7) - p.b1 * p.r1 * 0.4 * 0.9));
  CHECK(out.v == doctest::Approx(p.r2 * 1.3 * (1.0 - p.a2 * 1.3) + p.b2 * p.r2 * 0.2));
  CHECK(out.w == doctest::Approx(0.7 * 1.3 - p.kappa() * 0.2));
}

TEST_CASE("b1 = b2 = 0 decouples u into a logistic equation") {
  ModelParams p = reference_params();
  p.b1 = 0.0;
  p.b2 = 0.0;
  const double u = 3.0;
  for (const State x : {State{u, 0.1, 5.0}, State{u, 7.0, -2.0}}) {
    CHECK(reduced_rhs(x, x, p).u == p.r1 * u * (1.0 - p.a1 * u));
  }
}

TEST_CASE("parameter validation names every offending field") {
  ModelParams p = reference_params();
  CHECK(invalid_fields(p).empty());
  p.a1 = -0.1;
  p.s = -1.0;
  const auto bad = invalid_fields(p);
  REQUIRE(bad.size() == 2);
  CHECK(bad[0] == "a1");
  CHECK(bad[1] == "s");
  CHECK_THROWS_AS(validate(p), PreconditionError);
  p = reference_params();
  p.b1 = -3.0;
  p.b2 = -3.0;
  p.mu = 0.0;
  CHECK(invalid_fields(p).empty());
}

TEST_CASE("field accessors cover every parameter") {
  ModelParams p = reference_params();
  for (auto name : ModelParams::field_names) {
    p.field(name) = 42.0;
    CHECK(static_cast<const ModelParams&>(p).field(name) == 42.0);
  }
  CHECK(p.r1 == 42.0);
  CHECK(p.s == 42.0);
  CHECK_THROWS_AS(p.field("nope"), PreconditionError);
}

TEST_CASE("quadrature weights integrate the kernel exactly") {
  const double k = 6.0, h = 0.01;
  const std::size_t n = 600;
  const auto w = exponential_trapezoid_weights(k, h, n);
  REQUIRE(w.size() == n + 1);
  double sum = 0.0, first_moment = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    sum += w[j];
    first_moment += w[j] * static_cast<double>(j) * h;
  }
  const double T = static_cast<double>(n) * h;
  CHECK(sum == doctest::Approx(-std::expm1(-k * T) / k).epsilon(1e-13));
  // ∫ τ e^{-kτ} dτ over [0, T], exact for g linear.
  const double moment = (1.0 - std::exp(-k * T) * (1.0 + k * T)) / (k * k);
  CHECK(first_moment == doctest::Approx(moment).epsilon(1e-12));
}

namespace {

struct Window {
  std::vector<double> u, v;
  HistoryWindow view(double h) const { return {h, u, v}; }
};

Window constant_window(double u0, double v0, std::size_t n) {
  return {std::vector<double>(n, u0), std::vector<double>(n, v0)};
}

}  // namespace

TEST_CASE("oracle on constant history equals u0 v0 / (mu + r)") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> amp(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = test::wide_draw(rng);
    const double u0 = amp(rng), v0 = amp(rng);
    const double h = 0.01;
    const auto n = static_cast<std::size_t>(std::ceil(min_truncation_horizon(p) / h)) + 1;
    const Window w = constant_window(u0, v0, n);
    const QuadratureResult q = distributed_w_oracle(w.view(h), p);
    CHECK(std::abs(q.value - u0 * v0 / p.kappa()) < 1e-8);
    CHECK(q.truncation_bound <= std::exp(-30.0) * u0 * v0 / p.kappa() * (1.0 + 1e-12));
  }
}

TEST_CASE("oracle on zero history and at E*") {
  const ModelParams p = reference_params();
  const double h = 0.01;
  const auto n = static_cast<std::size_t>(std::ceil(min_truncation_horizon(p) / h)) + 1;
  CHECK(distributed_w_oracle(constant_window(0.0, 0.0, n).view(h), p).value == 0.0);
  const QuadratureResult q = distributed_w_oracle(constant_window(1.0, 1.0, n).view(h), p);
  CHECK(std::abs(q.value - 1.0 / 6.0) < 1e-8);
}

TEST_CASE("oracle rejects a history shorter than 30/(mu + r)") {
  const ModelParams p = reference_params();
  const double h = 0.01;
  const auto n = static_cast<std::size_t>(min_truncation_horizon(p) / h) - 1;
  CHECK_THROWS_AS(distributed_w_oracle(constant_window(1.0, 1.0, n).view(h), p), InsufficientHistoryError);
}

TEST_CASE("oracle matches the closed form for an oscillating history") {
  // u(t - τ) = cos(ω τ), v = 1:  ∫_0^T e^{-kτ} cos ωτ dτ = Re[(1 - e^{-(k - iω)T}) / (k - iω)].
  const ModelParams p = reference_params();
  const double k = p.kappa(), omega = 1.7;
  const auto error_at = [&](double h) {
    const auto n = static_cast<std::size_t>(std::ceil(min_truncation_horizon(p) / h)) + 1;
    Window w{std::vector<double>(n), std::vector<double>(n, 1.0)};
    for (std::size_t i = 0; i < n; ++i) {
      const double tau = static_cast<double>(n - 1 - i) * h;
      w.u[i] = std::cos(omega * tau);
    }
    const double T = static_cast<double>(n - 1) * h;
    const std::complex<double> a(k, -omega);
    const double exact = std::real((1.0 - std::exp(-a * T)) / a);
    return std::abs(distributed_w_oracle(w.view(h), p).value - exact);
  };
  const double e1 = error_at(0.02), e2 = error_at(0.01);
  CHECK(e2 < 1e-5);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));  // second order in h
}
