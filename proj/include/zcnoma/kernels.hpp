#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace zcnoma::kernels {

/// Backends produce bit-identical results; the project is compiled with
/// -ffp-contract=off so neither side silently fuses multiply-subtract.
enum class Backend { Scalar, Avx2 };

/// Backend picked at startup: AVX2 when the CPU supports it, else scalar.
/// ZCNOMA_KERNEL=scalar|avx2|auto in the environment overrides the choice
/// (an unsupported request falls back to scalar).
Backend active_backend();
std::string_view backend_name(Backend b);

/// Force a backend; used by the equivalence tests.
void set_backend(Backend b);

/// out[j] = min_i |x*u[i] - y[j]*v[i]| for i < npairs, j < count.
/// npairs must be >= 1.
void min_abs_pair_diff(double x, const double* u, const double* v, std::size_t npairs,
                       const double* y, std::size_t count, double* out);

/// out_idx[j] = index of the level closest to y[j]; ties resolve to the
/// smallest index. nlevels must be >= 1.
void nearest_level_batch(const double* levels, std::size_t nlevels,
                         const double* y, std::size_t count, std::uint32_t* out_idx);

/// out_idx[j] = index of the 2-D point (cr[k], ci[k]) closest to
/// (yr[j], yi[j]) in squared Euclidean distance; ties resolve to the smallest
/// index. npoints must be >= 1.
void nearest_point2_batch(const double* cr, const double* ci, std::size_t npoints,
                          const double* yr, const double* yi, std::size_t count,
                          std::uint32_t* out_idx);

namespace detail {

struct KernelTable {
  void (*min_abs_pair_diff)(double, const double*, const double*, std::size_t,
                            const double*, std::size_t, double*);
  void (*nearest_level_batch)(const double*, std::size_t, const double*, std::size_t,
                              std::uint32_t*);
  void (*nearest_point2_batch)(const double*, const double*, std::size_t, const double*,
                               const double*, std::size_t, std::uint32_t*);
};

extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable avx2_table;
bool cpu_has_avx2();
#endif

}  // namespace detail

}  // namespace zcnoma::kernels
