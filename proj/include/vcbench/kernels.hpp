#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Data-parallel primitives behind the analyzers' inner loops. Every
// operation has a scalar reference implementation plus optional SIMD
// variants (AVX2 on x86-64, NEON on aarch64) selected at runtime. The
// variants are equivalence-tested against the scalar kernels:
//   - integer reductions and element-wise FMA chains match bit-for-bit
//     (same per-element operation order, single-rounding fma),
//   - floating-point reductions may re-associate and match to ~1e-12
//     relative.
namespace vcbench::kernels {

struct Backend {
  std::string_view name;  // "scalar", "avx2", "neon"

  // sum of (a[i] - b[i])^2 over 8-bit samples, exact
  std::uint64_t (*sum_sq_diff_u8)(std::span<const std::uint8_t> a,
                                  std::span<const std::uint8_t> b);
  double (*sum_f64)(std::span<const double> v);
  double (*dot_f64)(std::span<const double> a, std::span<const double> b);
  double (*sum_sq_f64)(std::span<const double> v);
  // out[i] = a[i] * b[i]
  void (*mul_f64)(std::span<const double> a, std::span<const double> b,
                  std::span<double> out);
  // valid 1-D convolution of one row: out[i] = sum_t k[t] * src[i + t],
  // accumulated with fma in ascending tap order
  void (*conv_row_f64)(const double* src, std::size_t out_len,
                       std::span<const double> taps, double* out);
  // vertical tap accumulation across rows: out[i] = sum_t k[t] * rows[t][i]
  void (*conv_col_f64)(const double* const* rows, std::size_t row_len,
                       std::span<const double> taps, double* out);
};

// All backends compiled into this binary; index 0 is always scalar.
std::span<const Backend* const> available_backends();

// Currently active backend. Default: the widest variant this CPU supports,
// overridable with the VCBENCH_KERNELS environment variable or set_backend().
const Backend& active();

// Returns false if the named backend is unavailable. Not thread-safe;
// intended for startup and tests.
bool set_backend(std::string_view name);

// Convenience wrappers through the active backend.
inline std::uint64_t sum_sq_diff_u8(std::span<const std::uint8_t> a,
                                    std::span<const std::uint8_t> b) {
  return active().sum_sq_diff_u8(a, b);
}
inline double sum_f64(std::span<const double> v) { return active().sum_f64(v); }
inline double dot_f64(std::span<const double> a, std::span<const double> b) {
  return active().dot_f64(a, b);
}
inline double sum_sq_f64(std::span<const double> v) {
  return active().sum_sq_f64(v);
}
inline void mul_f64(std::span<const double> a, std::span<const double> b,
                    std::span<double> out) {
  active().mul_f64(a, b, out);
}

// Separable valid-region 2-D convolution with the same taps in both
// directions. src is row-major w x h; output is (w - taps + 1) x
// (h - taps + 1). Used by the structural-similarity family of metrics.
std::vector<double> conv2_valid(const std::vector<double>& src, int w, int h,
                                std::span<const double> taps, int& out_w,
                                int& out_h);

}  // namespace vcbench::kernels
