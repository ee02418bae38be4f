#pragma once

#include <cstdint>
#include <vector>

namespace vcbench {

// One raw video frame: 8-bit luma, optional 4:2:0 chroma. Metrics operate
// on luma only.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> luma;             // row-major, width*height
  std::vector<std::uint8_t> cb, cr;           // (width/2)*(height/2) or empty

  std::uint8_t at(int x, int y) const {
    return luma[static_cast<std::size_t>(y) * width + x];
  }
};

struct FrameSequence {
  std::vector<Frame> frames;  // identical dimensions
  double frame_rate = 30.0;

  int width() const { return frames.empty() ? 0 : frames.front().width; }
  int height() const { return frames.empty() ? 0 : frames.front().height; }
};

struct CropRect {
  int x = 0, y = 0, w = 0, h = 0;
};

struct PreprocessSpec {
  CropRect crop;
  int target_w = 0, target_h = 0;
};

// BT.601 full-range luma from 8-bit RGB.
std::uint8_t rgb_to_luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Crop then bilinear-resize every frame (luma only; chroma is dropped).
// Throws CropOutOfBounds when the rectangle leaves the source.
Frame preprocess(const Frame& frame, const PreprocessSpec& spec);
FrameSequence preprocess(const FrameSequence& seq, const PreprocessSpec& spec);

// Uniform-padding detector: the maximal border rows/columns whose samples,
// across every frame, span a range of at most `tolerance` luma levels.
// Returns the content rectangle left after removing that border.
CropRect detect_padding(const FrameSequence& seq, int tolerance = 8);

}  // namespace vcbench
