#include <algorithm>
#include <cmath>

#include "hopfdde/kernels.hpp"

namespace hopfdde::kernels::scalar {

double weighted_product_sum(std::span<const double> w, std::span<const double> u,
                            std::span<const double> v) {
  // Four partial sums in the same lane layout as the vector variant.
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n = w.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t k = 0; k < 4; ++k) acc[k] += w[i + k] * u[i + k] * v[i + k];
  }
  double total = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (; i < n; ++i) total += w[i] * u[i] * v[i];
  return total;
}

MinMax minmax(std::span<const double> x) {
  MinMax out{x[0], x[0]};
  for (double value : x) {
    out.min = std::min(out.min, value);
    out.max = std::max(out.max, value);
  }
  return out;
}

double max_abs_deviation(std::span<const double> x, double center) {
  double out = 0.0;
  for (double value : x) out = std::max(out, std::abs(value - center));
  return out;
}

}  // namespace hopfdde::kernels::scalar
