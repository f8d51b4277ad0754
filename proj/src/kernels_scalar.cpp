#include <cmath>

#include "zcnoma/kernels.hpp"

// Reference kernels. These define the exact arithmetic (mul, mul, sub, abs;
// first index wins ties) that the SIMD variants must reproduce bit for bit.

namespace zcnoma::kernels::detail {

namespace {

void min_abs_pair_diff_scalar(double x, const double* u, const double* v, std::size_t npairs,
                              const double* y, std::size_t count, double* out) {
  for (std::size_t j = 0; j < count; ++j) {
    const double yj = y[j];
    double best = std::fabs(x * u[0] - yj * v[0]);
    for (std::size_t i = 1; i < npairs; ++i) {
      const double d = std::fabs(x * u[i] - yj * v[i]);
      if (d < best) best = d;
    }
    out[j] = best;
  }
}

void nearest_level_batch_scalar(const double* levels, std::size_t nlevels, const double* y,
                                std::size_t count, std::uint32_t* out_idx) {
  for (std::size_t j = 0; j < count; ++j) {
    const double yj = y[j];
    double best = std::fabs(yj - levels[0]);
    std::uint32_t idx = 0;
    for (std::size_t k = 1; k < nlevels; ++k) {
      const double d = std::fabs(yj - levels[k]);
      if (d < best) {
        best = d;
        idx = static_cast<std::uint32_t>(k);
      }
    }
    out_idx[j] = idx;
  }
}

void nearest_point2_batch_scalar(const double* cr, const double* ci, std::size_t npoints,
                                 const double* yr, const double* yi, std::size_t count,
                                 std::uint32_t* out_idx) {
  for (std::size_t j = 0; j < count; ++j) {
    const double xr = yr[j];
    const double xi = yi[j];
    double dr = xr - cr[0];
    double di = xi - ci[0];
    double best = dr * dr + di * di;
    std::uint32_t idx = 0;
    for (std::size_t k = 1; k < npoints; ++k) {
      dr = xr - cr[k];
      di = xi - ci[k];
      const double d = dr * dr + di * di;
      if (d < best) {
        best = d;
        idx = static_cast<std::uint32_t>(k);
      }
    }
    out_idx[j] = idx;
  }
}

}  // namespace

const KernelTable scalar_table{
    &min_abs_pair_diff_scalar,
    &nearest_level_batch_scalar,
    &nearest_point2_batch_scalar,
};

}  // namespace zcnoma::kernels::detail
