#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference in
// kernels::scalar and, on x86-64, an AVX2/FMA variant in kernels::avx2.
// The unqualified entry points dispatch on the CPU at first use.

#include <cstddef>
#include <span>
#include <string_view>

namespace hopfdde::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct MinMax {
  double min;
  double max;
};

namespace scalar {
double weighted_product_sum(std::span<const double> w, std::span<const double> u,
                            std::span<const double> v);
MinMax minmax(std::span<const double> x);
double max_abs_deviation(std::span<const double> x, double center);
}  // namespace scalar

namespace avx2 {
bool compiled() noexcept;
double weighted_product_sum(std::span<const double> w, std::span<const double> u,
                            std::span<const double> v);
MinMax minmax(std::span<const double> x);
double max_abs_deviation(std::span<const double> x, double center);
}  // namespace avx2

/// True when the AVX2 variant was built and the running CPU supports AVX2+FMA.
bool avx2_available() noexcept;

Isa active_isa() noexcept;

/// Pins dispatch to `isa` (falls back to Scalar if unavailable). Returns the
/// ISA actually selected. Intended for tests and benchmarks.
Isa force_isa(Isa isa) noexcept;

/// Σ w[i]·u[i]·v[i]. All spans must have equal length.
double weighted_product_sum(std::span<const double> w, std::span<const double> u,
                            std::span<const double> v);

/// Minimum and maximum of a non-empty span.
MinMax minmax(std::span<const double> x);

/// max |x[i] - center|, 0 for an empty span.
double max_abs_deviation(std::span<const double> x, double center);

}  // namespace hopfdde::kernels
