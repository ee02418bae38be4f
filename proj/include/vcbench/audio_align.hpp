#pragma once

#include <filesystem>
#include <utility>

#include "vcbench/audio.hpp"

namespace vcbench {

// Signed offset in seconds of the degraded signal relative to the
// reference (positive = degraded starts later). Log-energy envelopes at a
// 20 ms hop / 40 ms window, normalized cross-correlation over lags within
// +/- max_offset, peak refined by parabolic interpolation; both inputs are
// mono-mixed internally. Throws NoConfidentPeak when the best correlation
// stays below 0.3.
double find_offset(const AudioBuffer& reference, const AudioBuffer& degraded,
                   double max_offset = 10.0);

// Trims both buffers to their overlapping interval given the offset from
// find_offset; the outputs have equal frame counts. Throws EmptyOverlap.
std::pair<AudioBuffer, AudioBuffer> trim_align(const AudioBuffer& reference,
                                               const AudioBuffer& degraded,
                                               double offset);

struct ExportedPair {
  std::filesystem::path reference_path;
  std::filesystem::path degraded_path;
};

// Writes "<prefix>ref.wav" and "<prefix>deg.wav" (16-bit PCM, mono-mixed)
// for an external MOS-LQO scorer.
ExportedPair export_pair(const AudioBuffer& reference,
                         const AudioBuffer& degraded,
                         const std::filesystem::path& prefix);

}  // namespace vcbench
