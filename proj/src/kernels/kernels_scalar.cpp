#include <cmath>

#include "kernels_impl.hpp"

namespace vcbench::kernels {
namespace {

std::uint64_t ssd_u8(std::span<const std::uint8_t> a,
                     std::span<const std::uint8_t> b) {
  std::uint64_t acc = 0;
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t d =
        static_cast<std::int64_t>(a[i]) - static_cast<std::int64_t>(b[i]);
    acc += static_cast<std::uint64_t>(d * d);
  }
  return acc;
}

double sum(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc = std::fma(a[i], b[i], acc);
  return acc;
}

double sum_sq(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc = std::fma(x, x, acc);
  return acc;
}

void mul(std::span<const double> a, std::span<const double> b,
         std::span<double> out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

// fma keeps each output a single-rounded chain so SIMD variants can
// reproduce it exactly.
void conv_row(const double* src, std::size_t out_len,
              std::span<const double> taps, double* out) {
  const std::size_t t_n = taps.size();
  for (std::size_t i = 0; i < out_len; ++i) {
    double acc = 0.0;
    for (std::size_t t = 0; t < t_n; ++t) acc = std::fma(taps[t], src[i + t], acc);
    out[i] = acc;
  }
}

void conv_col(const double* const* rows, std::size_t row_len,
              std::span<const double> taps, double* out) {
  const std::size_t t_n = taps.size();
  for (std::size_t i = 0; i < row_len; ++i) {
    double acc = 0.0;
    for (std::size_t t = 0; t < t_n; ++t) acc = std::fma(taps[t], rows[t][i], acc);
    out[i] = acc;
  }
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend{
      "scalar", &ssd_u8, &sum, &dot, &sum_sq, &mul, &conv_row, &conv_col,
  };
  return backend;
}

}  // namespace vcbench::kernels
