#pragma once

#include <filesystem>

#include "vcbench/frame.hpp"

namespace vcbench {

// YUV4MPEG2 reader/writer, 8-bit 4:2:0 (C420 family) or Cmono. The reader
// keeps chroma planes when present; the writer emits C420jpeg, synthesizing
// neutral chroma when a frame has none.
FrameSequence read_y4m(const std::filesystem::path& path);
void write_y4m(const std::filesystem::path& path, const FrameSequence& seq);

// Raw planar Y-only input. Dimensions come either from the arguments or,
// when w/h are zero, from a JSON sidecar at "<path>.dims.json" with fields
// {"width": .., "height": .., "frame_rate": ..}.
FrameSequence read_raw_y(const std::filesystem::path& path, int width = 0,
                         int height = 0, double frame_rate = 30.0);

}  // namespace vcbench
