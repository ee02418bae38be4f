#include <arm_neon.h>

#include <cmath>

#include "kernels_impl.hpp"

// NEON (aarch64) variants, 2-lane f64. Same contract as the AVX2 file:
// fma chains bit-identical to scalar, reductions tolerance-tested.

namespace vcbench::kernels {
namespace {

std::uint64_t ssd_u8(std::span<const std::uint8_t> a,
                     std::span<const std::uint8_t> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const uint8x16_t va = vld1q_u8(a.data() + i);
    const uint8x16_t vb = vld1q_u8(b.data() + i);
    const uint8x16_t d = vabdq_u8(va, vb);
    const uint16x8_t lo = vmull_u8(vget_low_u8(d), vget_low_u8(d));
    const uint16x8_t hi = vmull_u8(vget_high_u8(d), vget_high_u8(d));
    total += vaddlvq_u16(lo);
    total += vaddlvq_u16(hi);
  }
  for (; i < n; ++i) {
    const std::int64_t d =
        static_cast<std::int64_t>(a[i]) - static_cast<std::int64_t>(b[i]);
    total += static_cast<std::uint64_t>(d * d);
  }
  return total;
}

double sum(std::span<const double> v) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= v.size(); i += 2) acc = vaddq_f64(acc, vld1q_f64(v.data() + i));
  double total = vaddvq_f64(acc);
  for (; i < v.size(); ++i) total += v[i];
  return total;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vfmaq_f64(acc, vld1q_f64(a.data() + i), vld1q_f64(b.data() + i));
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total = std::fma(a[i], b[i], total);
  return total;
}

double sum_sq(std::span<const double> v) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= v.size(); i += 2) {
    const float64x2_t x = vld1q_f64(v.data() + i);
    acc = vfmaq_f64(acc, x, x);
  }
  double total = vaddvq_f64(acc);
  for (; i < v.size(); ++i) total = std::fma(v[i], v[i], total);
  return total;
}

void mul(std::span<const double> a, std::span<const double> b,
         std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(out.data() + i,
              vmulq_f64(vld1q_f64(a.data() + i), vld1q_f64(b.data() + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void conv_row(const double* src, std::size_t out_len,
              std::span<const double> taps, double* out) {
  const std::size_t t_n = taps.size();
  std::size_t i = 0;
  for (; i + 2 <= out_len; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t t = 0; t < t_n; ++t)
      acc = vfmaq_f64(acc, vdupq_n_f64(taps[t]), vld1q_f64(src + i + t));
    vst1q_f64(out + i, acc);
  }
  for (; i < out_len; ++i) {
    double acc = 0.0;
    for (std::size_t t = 0; t < t_n; ++t) acc = std::fma(taps[t], src[i + t], acc);
    out[i] = acc;
  }
}

void conv_col(const double* const* rows, std::size_t row_len,
              std::span<const double> taps, double* out) {
  const std::size_t t_n = taps.size();
  std::size_t i = 0;
  for (; i + 2 <= row_len; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t t = 0; t < t_n; ++t)
      acc = vfmaq_f64(acc, vdupq_n_f64(taps[t]), vld1q_f64(rows[t] + i));
    vst1q_f64(out + i, acc);
  }
  for (; i < row_len; ++i) {
    double acc = 0.0;
    for (std::size_t t = 0; t < t_n; ++t) acc = std::fma(taps[t], rows[t][i], acc);
    out[i] = acc;
  }
}

}  // namespace

const Backend& neon_backend() {
  static const Backend backend{
      "neon", &ssd_u8, &sum, &dot, &sum_sq, &mul, &conv_row, &conv_col,
  };
  return backend;
}

}  // namespace vcbench::kernels
