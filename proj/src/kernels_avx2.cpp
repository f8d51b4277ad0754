#include "zcnoma/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

// AVX2 variants of the reference kernels, vectorized across the batch
// dimension (4 doubles per lane group). Values stay bit-identical to the
// scalar kernels: same mul/sub/abs ordering, no fma, strict < for argmin so
// the first index still wins ties. All compared values are |.| or squared
// sums, so -0.0 never reaches a min and signed-zero blending cannot diverge.

namespace zcnoma::kernels::detail {

namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

void min_abs_pair_diff_avx2(double x, const double* u, const double* v, std::size_t npairs,
                            const double* y, std::size_t count, double* out) {
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d yj = _mm256_loadu_pd(y + j);
    __m256d best = abs_pd(_mm256_sub_pd(_mm256_set1_pd(x * u[0]),
                                        _mm256_mul_pd(yj, _mm256_set1_pd(v[0]))));
    for (std::size_t i = 1; i < npairs; ++i) {
      const __m256d d = abs_pd(_mm256_sub_pd(_mm256_set1_pd(x * u[i]),
                                             _mm256_mul_pd(yj, _mm256_set1_pd(v[i]))));
      best = _mm256_min_pd(best, d);
    }
    _mm256_storeu_pd(out + j, best);
  }
  if (j < count) {
    scalar_table.min_abs_pair_diff(x, u, v, npairs, y + j, count - j, out + j);
  }
}

void nearest_level_batch_avx2(const double* levels, std::size_t nlevels, const double* y,
                              std::size_t count, std::uint32_t* out_idx) {
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d yj = _mm256_loadu_pd(y + j);
    __m256d best = abs_pd(_mm256_sub_pd(yj, _mm256_set1_pd(levels[0])));
    __m256i idx = _mm256_setzero_si256();
    for (std::size_t k = 1; k < nlevels; ++k) {
      const __m256d d = abs_pd(_mm256_sub_pd(yj, _mm256_set1_pd(levels[k])));
      const __m256d lt = _mm256_cmp_pd(d, best, _CMP_LT_OQ);
      best = _mm256_blendv_pd(best, d, lt);
      idx = _mm256_blendv_epi8(idx, _mm256_set1_epi64x(static_cast<long long>(k)),
                               _mm256_castpd_si256(lt));
    }
    alignas(32) long long lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), idx);
    for (int lane = 0; lane < 4; ++lane) {
      out_idx[j + lane] = static_cast<std::uint32_t>(lanes[lane]);
    }
  }
  if (j < count) {
    scalar_table.nearest_level_batch(levels, nlevels, y + j, count - j, out_idx + j);
  }
}

void nearest_point2_batch_avx2(const double* cr, const double* ci, std::size_t npoints,
                               const double* yr, const double* yi, std::size_t count,
                               std::uint32_t* out_idx) {
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d xr = _mm256_loadu_pd(yr + j);
    const __m256d xi = _mm256_loadu_pd(yi + j);
    __m256d dr = _mm256_sub_pd(xr, _mm256_set1_pd(cr[0]));
    __m256d di = _mm256_sub_pd(xi, _mm256_set1_pd(ci[0]));
    __m256d best = _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di));
    __m256i idx = _mm256_setzero_si256();
    for (std::size_t k = 1; k < npoints; ++k) {
      dr = _mm256_sub_pd(xr, _mm256_set1_pd(cr[k]));
      di = _mm256_sub_pd(xi, _mm256_set1_pd(ci[k]));
      const __m256d d = _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di));
      const __m256d lt = _mm256_cmp_pd(d, best, _CMP_LT_OQ);
      best = _mm256_blendv_pd(best, d, lt);
      idx = _mm256_blendv_epi8(idx, _mm256_set1_epi64x(static_cast<long long>(k)),
                               _mm256_castpd_si256(lt));
    }
    alignas(32) long long lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), idx);
    for (int lane = 0; lane < 4; ++lane) {
      out_idx[j + lane] = static_cast<std::uint32_t>(lanes[lane]);
    }
  }
  if (j < count) {
    scalar_table.nearest_point2_batch(cr, ci, npoints, yr + j, yi + j, count - j, out_idx + j);
  }
}

}  // namespace

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

const KernelTable avx2_table{
    &min_abs_pair_diff_avx2,
    &nearest_level_batch_avx2,
    &nearest_point2_batch_avx2,
};

}  // namespace zcnoma::kernels::detail

#endif  // x86_64
