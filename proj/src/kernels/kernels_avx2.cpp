#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

// AVX2 + FMA variants. Element-wise kernels and the convolution kernels
// follow the scalar per-element fma chains exactly and are bit-identical;
// reductions use 4-lane accumulators and may differ in the last bits.

namespace vcbench::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

std::uint64_t ssd_u8(std::span<const std::uint8_t> a,
                     std::span<const std::uint8_t> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  std::uint64_t total = 0;
  std::size_t i = 0;
  // 32-bit lanes hold at most 2*255^2 per step; fold into the 64-bit total
  // every 4096 steps, well before overflow.
  while (i + 32 <= n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t steps = (n - i) / 32;
    if (steps > 4096) steps = 4096;
    for (std::size_t s = 0; s < steps; ++s, i += 32) {
      const __m256i va =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
      const __m256i vb =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
      const __m256i d = _mm256_sub_epi8(_mm256_max_epu8(va, vb),
                                        _mm256_min_epu8(va, vb));
      const __m256i z = _mm256_setzero_si256();
      const __m256i dl = _mm256_unpacklo_epi8(d, z);
      const __m256i dh = _mm256_unpackhi_epi8(d, z);
      acc = _mm256_add_epi32(acc, _mm256_madd_epi16(dl, dl));
      acc = _mm256_add_epi32(acc, _mm256_madd_epi16(dh, dh));
    }
    alignas(32) std::uint32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    for (std::uint32_t lane : lanes) total += lane;
  }
  for (; i < n; ++i) {
    const std::int64_t d =
        static_cast<std::int64_t>(a[i]) - static_cast<std::int64_t>(b[i]);
    total += static_cast<std::uint64_t>(d * d);
  }
  return total;
}

double sum(std::span<const double> v) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= v.size(); i += 4)
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(v.data() + i));
  double total = hsum(acc);
  for (; i < v.size(); ++i) total += v[i];
  return total;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i),
                          _mm256_loadu_pd(b.data() + i), acc);
  double total = hsum(acc);
  for (; i < n; ++i) total = std::fma(a[i], b[i], total);
  return total;
}

double sum_sq(std::span<const double> v) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= v.size(); i += 4) {
    const __m256d x = _mm256_loadu_pd(v.data() + i);
    acc = _mm256_fmadd_pd(x, x, acc);
  }
  double total = hsum(acc);
  for (; i < v.size(); ++i) total = std::fma(v[i], v[i], total);
  return total;
}

void mul(std::span<const double> a, std::span<const double> b,
         std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out.data() + i,
                     _mm256_mul_pd(_mm256_loadu_pd(a.data() + i),
                                   _mm256_loadu_pd(b.data() + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void conv_row(const double* src, std::size_t out_len,
              std::span<const double> taps, double* out) {
  const std::size_t t_n = taps.size();
  std::size_t i = 0;
  for (; i + 4 <= out_len; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t t = 0; t < t_n; ++t)
      acc = _mm256_fmadd_pd(_mm256_set1_pd(taps[t]),
                            _mm256_loadu_pd(src + i + t), acc);
    _mm256_storeu_pd(out + i, acc);
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
  for (; i + 4 <= row_len; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t t = 0; t < t_n; ++t)
      acc = _mm256_fmadd_pd(_mm256_set1_pd(taps[t]),
                            _mm256_loadu_pd(rows[t] + i), acc);
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < row_len; ++i) {
    double acc = 0.0;
    for (std::size_t t = 0; t < t_n; ++t) acc = std::fma(taps[t], rows[t][i], acc);
    out[i] = acc;
  }
}

}  // namespace

bool cpu_has_avx2() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Backend& avx2_backend() {
  static const Backend backend{
      "avx2", &ssd_u8, &sum, &dot, &sum_sq, &mul, &conv_row, &conv_col,
  };
  return backend;
}

}  // namespace vcbench::kernels
