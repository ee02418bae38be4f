#pragma once

#include "vcbench/audio.hpp"

namespace vcbench {

struct LoudnessStats {
  double integrated = 0.0;              // LUFS
  std::size_t gating_block_count = 0;   // blocks surviving both gates
};

// ITU-R BS.1770 integrated loudness: K-weighting (high-shelf + high-pass
// biquads, 48 kHz coefficients), 400 ms blocks at 75% overlap, absolute
// gate at -70 LUFS, relative gate 10 LU below the first-pass mean.
// Throws TooShort (< 0.4 s) and AllGated (no block survives).
LoudnessStats integrated_loudness(const AudioBuffer& audio);

struct NormalizeResult {
  AudioBuffer audio;
  double gain = 1.0;            // linear gain applied
  std::size_t clipped = 0;      // samples clipped into [-1, 1)
};

// Uniform gain toward the target integrated loudness; the result
// re-measures within 0.1 LU unless clipping or gating interferes.
NormalizeResult normalize_loudness(const AudioBuffer& audio,
                                   double target_lufs = -23.0);

}  // namespace vcbench
