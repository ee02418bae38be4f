#include "vcbench/frame.hpp"

#include <algorithm>
#include <cmath>

#include "vcbench/errors.hpp"

namespace vcbench {

std::uint8_t rgb_to_luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  return static_cast<std::uint8_t>(std::lround(std::clamp(y, 0.0, 255.0)));
}

namespace {

void check_spec(const Frame& frame, const PreprocessSpec& spec) {
  const CropRect& c = spec.crop;
  if (c.x < 0 || c.y < 0 || c.w <= 0 || c.h <= 0 ||
      c.x + c.w > frame.width || c.y + c.h > frame.height)
    throw CropOutOfBounds("crop rectangle outside the source frame");
  if (spec.target_w <= 0 || spec.target_h <= 0)
    throw InputError("target dimensions must be positive");
}

}  // namespace

Frame preprocess(const Frame& frame, const PreprocessSpec& spec) {
  check_spec(frame, spec);
  const CropRect& c = spec.crop;

  Frame out;
  out.width = spec.target_w;
  out.height = spec.target_h;
  out.luma.resize(static_cast<std::size_t>(out.width) * out.height);

  // center-aligned bilinear sampling over the cropped region
  const double sx = static_cast<double>(c.w) / spec.target_w;
  const double sy = static_cast<double>(c.h) / spec.target_h;
  for (int y = 0; y < out.height; ++y) {
    double fy = (y + 0.5) * sy - 0.5;
    fy = std::clamp(fy, 0.0, static_cast<double>(c.h - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, c.h - 1);
    const double wy = fy - y0;
    for (int x = 0; x < out.width; ++x) {
      double fx = (x + 0.5) * sx - 0.5;
      fx = std::clamp(fx, 0.0, static_cast<double>(c.w - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, c.w - 1);
      const double wx = fx - x0;

      const double p00 = frame.at(c.x + x0, c.y + y0);
      const double p10 = frame.at(c.x + x1, c.y + y0);
      const double p01 = frame.at(c.x + x0, c.y + y1);
      const double p11 = frame.at(c.x + x1, c.y + y1);
      const double v = (1.0 - wy) * ((1.0 - wx) * p00 + wx * p10) +
                       wy * ((1.0 - wx) * p01 + wx * p11);
      out.luma[static_cast<std::size_t>(y) * out.width + x] =
          static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
    }
  }
  return out;
}

FrameSequence preprocess(const FrameSequence& seq, const PreprocessSpec& spec) {
  FrameSequence out;
  out.frame_rate = seq.frame_rate;
  out.frames.reserve(seq.frames.size());
  for (const Frame& f : seq.frames) out.frames.push_back(preprocess(f, spec));
  return out;
}

CropRect detect_padding(const FrameSequence& seq, int tolerance) {
  if (seq.frames.empty()) return {};
  const int w = seq.width();
  const int h = seq.height();

  // per-row / per-column min & max over all frames
  std::vector<int> row_min(static_cast<std::size_t>(h), 255);
  std::vector<int> row_max(static_cast<std::size_t>(h), 0);
  std::vector<int> col_min(static_cast<std::size_t>(w), 255);
  std::vector<int> col_max(static_cast<std::size_t>(w), 0);
  for (const Frame& f : seq.frames) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int v = f.at(x, y);
        row_min[y] = std::min(row_min[y], v);
        row_max[y] = std::max(row_max[y], v);
        col_min[x] = std::min(col_min[x], v);
        col_max[x] = std::max(col_max[x], v);
      }
    }
  }

  auto uniform_row = [&](int y) { return row_max[y] - row_min[y] <= tolerance; };
  auto uniform_col = [&](int x) { return col_max[x] - col_min[x] <= tolerance; };

  int top = 0, bottom = 0, left = 0, right = 0;
  while (top < h && uniform_row(top)) ++top;
  while (bottom < h - top && uniform_row(h - 1 - bottom)) ++bottom;
  while (left < w && uniform_col(left)) ++left;
  while (right < w - left && uniform_col(w - 1 - right)) ++right;

  CropRect content{left, top, w - left - right, h - top - bottom};
  if (content.w <= 0 || content.h <= 0) return {0, 0, w, h};  // blank feed
  return content;
}

}  // namespace vcbench
