#include "vcbench/kernels.hpp"

#include <cstdlib>
#include <vector>

#include "kernels_impl.hpp"

namespace vcbench::kernels {
namespace {

std::vector<const Backend*> build_registry() {
  std::vector<const Backend*> v;
  v.push_back(&scalar_backend());
#if defined(VCBENCH_BUILD_AVX2)
  if (cpu_has_avx2()) v.push_back(&avx2_backend());
#endif
#if defined(VCBENCH_BUILD_NEON)
  v.push_back(&neon_backend());
#endif
  return v;
}

const std::vector<const Backend*>& registry() {
  static const std::vector<const Backend*> r = build_registry();
  return r;
}

const Backend* pick_default() {
  const auto& r = registry();
  if (const char* env = std::getenv("VCBENCH_KERNELS")) {
    for (const Backend* b : r)
      if (b->name == std::string_view(env)) return b;
  }
  return r.back();  // widest variant registers last
}

const Backend*& active_slot() {
  static const Backend* slot = pick_default();
  return slot;
}

}  // namespace

std::span<const Backend* const> available_backends() { return registry(); }

const Backend& active() { return *active_slot(); }

bool set_backend(std::string_view name) {
  for (const Backend* b : registry()) {
    if (b->name == name) {
      active_slot() = b;
      return true;
    }
  }
  return false;
}

std::vector<double> conv2_valid(const std::vector<double>& src, int w, int h,
                                std::span<const double> taps, int& out_w,
                                int& out_h) {
  const int k = static_cast<int>(taps.size());
  out_w = w - k + 1;
  out_h = h - k + 1;
  if (out_w <= 0 || out_h <= 0) {
    out_w = out_h = 0;
    return {};
  }
  const Backend& be = active();

  // horizontal pass: h rows of out_w samples
  std::vector<double> mid(static_cast<std::size_t>(out_w) * h);
  for (int r = 0; r < h; ++r)
    be.conv_row_f64(src.data() + static_cast<std::size_t>(r) * w,
                    static_cast<std::size_t>(out_w), taps,
                    mid.data() + static_cast<std::size_t>(r) * out_w);

  // vertical pass
  std::vector<double> out(static_cast<std::size_t>(out_w) * out_h);
  std::vector<const double*> rows(static_cast<std::size_t>(k));
  for (int r = 0; r < out_h; ++r) {
    for (int t = 0; t < k; ++t)
      rows[static_cast<std::size_t>(t)] =
          mid.data() + static_cast<std::size_t>(r + t) * out_w;
    be.conv_col_f64(rows.data(), static_cast<std::size_t>(out_w), taps,
                    out.data() + static_cast<std::size_t>(r) * out_w);
  }
  return out;
}

}  // namespace vcbench::kernels
