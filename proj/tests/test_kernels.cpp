#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hopfdde/kernels.hpp"

using namespace hopfdde;
using hopfdde::kernels::Isa;

namespace {

struct Data {
  std::vector<double> w, u, v;
};

Data make_data(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  Data x{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    x.w[i] = d(rng);
    x.u[i] = d(rng);
    x.v[i] = d(rng);
  }
  return x;
}

long double reference_sum(const Data& x) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < x.w.size(); ++i)
    acc += static_cast<long double>(x.w[i]) * x.u[i] * x.v[i];
  return acc;
}

double abs_sum(const Data& x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.w.size(); ++i) acc += std::abs(x.w[i] * x.u[i] * x.v[i]);
  return acc;
}

}  // namespace

TEST_CASE("scalar kernels against a long double reference") {
  std::mt19937_64 rng(51);
  for (std::size_t n = 0; n < 70; ++n) {
    const Data x = make_data(rng, n);
    const double got = kernels::scalar::weighted_product_sum(x.w, x.u, x.v);
    CHECK(std::abs(got - static_cast<double>(reference_sum(x))) <= 1e-15 * (1.0 + abs_sum(x)) * (n + 1));
    if (n == 0) continue;
    const auto mm = kernels::scalar::minmax(x.u);
    CHECK(mm.min == *std::min_element(x.u.begin(), x.u.end()));
    CHECK(mm.max == *std::max_element(x.u.begin(), x.u.end()));
    double dev = 0.0;
    for (double a : x.u) dev = std::max(dev, std::abs(a - 0.3));
    CHECK(kernels::scalar::max_abs_deviation(x.u, 0.3) == dev);
  }
  CHECK(kernels::scalar::max_abs_deviation({}, 1.0) == 0.0);
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 not available on this build or CPU; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(52);
  for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 100, 1001, 5000}) {
    const Data x = make_data(rng, n);
    const double a = kernels::scalar::weighted_product_sum(x.w, x.u, x.v);
    const double b = kernels::avx2::weighted_product_sum(x.w, x.u, x.v);
    CHECK(std::abs(a - b) <= 4e-16 * abs_sum(x) * std::sqrt(static_cast<double>(n) + 1.0) + 1e-300);
    if (n == 0) continue;
    const auto ma = kernels::scalar::minmax(x.v);
    const auto mb = kernels::avx2::minmax(x.v);
    CHECK(ma.min == mb.min);
    CHECK(ma.max == mb.max);
    CHECK(kernels::scalar::max_abs_deviation(x.w, -0.2) == kernels::avx2::max_abs_deviation(x.w, -0.2));
  }
}

TEST_CASE("dispatch can be pinned") {
  const Isa before = kernels::active_isa();
  CHECK(kernels::force_isa(Isa::Scalar) == Isa::Scalar);
  CHECK(kernels::active_isa() == Isa::Scalar);
  const Isa chosen = kernels::force_isa(Isa::Avx2);
  CHECK(chosen == (kernels::avx2_available() ? Isa::Avx2 : Isa::Scalar));
  std::mt19937_64 rng(53);
  const Data x = make_data(rng, 257);
  kernels::force_isa(Isa::Scalar);
  const double s = kernels::weighted_product_sum(x.w, x.u, x.v);
  kernels::force_isa(Isa::Avx2);
  const double v = kernels::weighted_product_sum(x.w, x.u, x.v);
  CHECK(std::abs(s - v) <= 1e-13 * abs_sum(x));
  kernels::force_isa(before);
  CHECK(kernels::to_string(Isa::Scalar) == "scalar");
}
