#include "zcnoma/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace zcnoma::kernels {

namespace {

Backend resolve_default() {
#if defined(__x86_64__) || defined(_M_X64)
  Backend b = detail::cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
#else
  Backend b = Backend::Scalar;
#endif
  if (const char* env = std::getenv("ZCNOMA_KERNEL")) {
    const std::string s(env);
    if (s == "scalar") b = Backend::Scalar;
#if defined(__x86_64__) || defined(_M_X64)
    if (s == "avx2" && detail::cpu_has_avx2()) b = Backend::Avx2;
#endif
  }
  return b;
}

std::atomic<Backend> g_backend{resolve_default()};

const detail::KernelTable& table() {
#if defined(__x86_64__) || defined(_M_X64)
  if (g_backend.load(std::memory_order_relaxed) == Backend::Avx2) {
    return detail::avx2_table;
  }
#endif
  return detail::scalar_table;
}

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
#if !defined(__x86_64__) && !defined(_M_X64)
  b = Backend::Scalar;
#endif
  g_backend.store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Avx2:
      return "avx2";
    case Backend::Scalar:
    default:
      return "scalar";
  }
}

void min_abs_pair_diff(double x, const double* u, const double* v, std::size_t npairs,
                       const double* y, std::size_t count, double* out) {
  table().min_abs_pair_diff(x, u, v, npairs, y, count, out);
}

void nearest_level_batch(const double* levels, std::size_t nlevels, const double* y,
                         std::size_t count, std::uint32_t* out_idx) {
  table().nearest_level_batch(levels, nlevels, y, count, out_idx);
}

void nearest_point2_batch(const double* cr, const double* ci, std::size_t npoints,
                          const double* yr, const double* yi, std::size_t count,
                          std::uint32_t* out_idx) {
  table().nearest_point2_batch(cr, ci, npoints, yr, yi, count, out_idx);
}

}  // namespace zcnoma::kernels
