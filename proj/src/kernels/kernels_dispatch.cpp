#include <atomic>

#include "hopfdde/kernels.hpp"

namespace hopfdde::kernels {

#ifndef HOPFDDE_HAVE_AVX2
namespace avx2 {
bool compiled() noexcept { return false; }
double weighted_product_sum(std::span<const double> w, std::span<const double> u,
                            std::span<const double> v) {
  return scalar::weighted_product_sum(w, u, v);
}
MinMax minmax(std::span<const double> x) { return scalar::minmax(x); }
double max_abs_deviation(std::span<const double> x, double center) {
  return scalar::max_abs_deviation(x, center);
}
}  // namespace avx2
#endif

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() noexcept {
#if defined(HOPFDDE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported;
#else
  return false;
#endif
}

namespace {
std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{avx2_available() ? Isa::Avx2 : Isa::Scalar};
  return isa;
}
}  // namespace

Isa active_isa() noexcept { return selected().load(std::memory_order_relaxed); }

Isa force_isa(Isa isa) noexcept {
  if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
  selected().store(isa, std::memory_order_relaxed);
  return isa;
}

double weighted_product_sum(std::span<const double> w, std::span<const double> u,
                            std::span<const double> v) {
  return active_isa() == Isa::Avx2 ? avx2::weighted_product_sum(w, u, v)
                                   : scalar::weighted_product_sum(w, u, v);
}

MinMax minmax(std::span<const double> x) {
  return active_isa() == Isa::Avx2 ? avx2::minmax(x) : scalar::minmax(x);
}

double max_abs_deviation(std::span<const double> x, double center) {
  return active_isa() == Isa::Avx2 ? avx2::max_abs_deviation(x, center)
                                   : scalar::max_abs_deviation(x, center);
}

}  // namespace hopfdde::kernels
