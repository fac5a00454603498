#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "hopfdde/kernels.hpp"

namespace hopfdde::kernels::avx2 {

bool compiled() noexcept { return true; }

double weighted_product_sum(std::span<const double> w, std::span<const double> u,
                            std::span<const double> v) {
  const std::size_t n = w.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d wu = _mm256_mul_pd(_mm256_loadu_pd(w.data() + i), _mm256_loadu_pd(u.data() + i));
    acc = _mm256_fmadd_pd(wu, _mm256_loadu_pd(v.data() + i), acc);
  }
  // lanes (0+2) + (1+3), matching the scalar reduction order
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  double total = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  for (; i < n; ++i) total += w[i] * u[i] * v[i];
  return total;
}

MinMax minmax(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 4) return scalar::minmax(x);
  __m256d lo = _mm256_loadu_pd(x.data());
  __m256d hi = lo;
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) {
    const __m256d chunk = _mm256_loadu_pd(x.data() + i);
    lo = _mm256_min_pd(lo, chunk);
    hi = _mm256_max_pd(hi, chunk);
  }
  alignas(32) double lo_lanes[4];
  alignas(32) double hi_lanes[4];
  _mm256_store_pd(lo_lanes, lo);
  _mm256_store_pd(hi_lanes, hi);
  MinMax out{lo_lanes[0], hi_lanes[0]};
  for (int k = 1; k < 4; ++k) {
    out.min = std::min(out.min, lo_lanes[k]);
    out.max = std::max(out.max, hi_lanes[k]);
  }
  for (; i < n; ++i) {
    out.min = std::min(out.min, x[i]);
    out.max = std::max(out.max, x[i]);
  }
  return out;
}

double max_abs_deviation(std::span<const double> x, double center) {
  const std::size_t n = x.size();
  const __m256d c = _mm256_set1_pd(center);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), c);
    best = _mm256_max_pd(best, _mm256_andnot_pd(sign_mask, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) out = std::max(out, std::abs(x[i] - center));
  return out;
}

}  // namespace hopfdde::kernels::avx2
