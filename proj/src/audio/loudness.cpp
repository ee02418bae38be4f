#include "vcbench/loudness.hpp"

#include <algorithm>
#include <cmath>

#include "vcbench/errors.hpp"

namespace vcbench {
namespace {

// BS.1770 K-weighting biquads for 48 kHz exactly as published.
struct Biquad {
  double b0, b1, b2, a1, a2;
  double z1 = 0.0, z2 = 0.0;

  double process(double x) {
    const double y = b0 * x + z1;
    z1 = b1 * x - a1 * y + z2;
    z2 = b2 * x - a2 * y;
    return y;
  }
};

constexpr double kShelfB0 = 1.53512485958697;
constexpr double kShelfB1 = -2.69169618940638;
constexpr double kShelfB2 = 1.19839281085285;
constexpr double kShelfA1 = -1.69065929318241;
constexpr double kShelfA2 = 0.73248077421585;

constexpr double kHpB0 = 1.0;
constexpr double kHpB1 = -2.0;
constexpr double kHpB2 = 1.0;
constexpr double kHpA1 = -1.99004745483398;
constexpr double kHpA2 = 0.99007225036621;

constexpr double kAbsoluteGateLufs = -70.0;
constexpr double kRelativeGateLu = 10.0;
constexpr double kOffset = -0.691;

double loudness_of(double mean_square) {
  return kOffset + 10.0 * std::log10(mean_square);
}

}  // namespace

LoudnessStats integrated_loudness(const AudioBuffer& audio) {
  if (audio.sample_rate != 48000)
    throw UnsupportedAudioFormat("loudness meter requires 48 kHz input");
  const std::size_t frames = audio.frame_count();
  const auto block = static_cast<std::size_t>(0.4 * audio.sample_rate);
  const auto hop = block / 4;  // 75% overlap
  if (frames < block) throw TooShort("loudness needs at least 0.4 s of audio");

  // K-weighted per-frame power summed over channels (channel weights are
  // 1.0 for mono/stereo), then a prefix sum so each 400 ms block is O(1).
  std::vector<double> power(frames);
  for (int c = 0; c < audio.channels; ++c) {
    Biquad shelf{kShelfB0, kShelfB1, kShelfB2, kShelfA1, kShelfA2};
    Biquad highpass{kHpB0, kHpB1, kHpB2, kHpA1, kHpA2};
    for (std::size_t i = 0; i < frames; ++i) {
      const double x = audio.samples[i * audio.channels + c];
      const double y = highpass.process(shelf.process(x));
      power[i] += y * y;
    }
  }
  std::vector<double> prefix(frames + 1, 0.0);
  for (std::size_t i = 0; i < frames; ++i) prefix[i + 1] = prefix[i] + power[i];

  std::vector<double> block_ms;  // mean square per gating block
  for (std::size_t start = 0; start + block <= frames; start += hop)
    block_ms.push_back((prefix[start + block] - prefix[start]) /
                       static_cast<double>(block));

  // absolute gate
  std::vector<double> above_abs;
  for (const double z : block_ms)
    if (loudness_of(z) > kAbsoluteGateLufs) above_abs.push_back(z);
  if (above_abs.empty()) throw AllGated("every block is below -70 LUFS");

  // relative gate, 10 LU below the mean of the absolutely-gated blocks
  double mean = 0.0;
  for (const double z : above_abs) mean += z;
  mean /= static_cast<double>(above_abs.size());
  const double relative_gate = loudness_of(mean) - kRelativeGateLu;

  double gated_sum = 0.0;
  std::size_t gated_count = 0;
  for (const double z : block_ms) {
    const double l = loudness_of(z);
    if (l > kAbsoluteGateLufs && l > relative_gate) {
      gated_sum += z;
      ++gated_count;
    }
  }
  if (gated_count == 0) throw AllGated("no block survives the relative gate");

  LoudnessStats stats;
  stats.gating_block_count = gated_count;
  stats.integrated = loudness_of(gated_sum / static_cast<double>(gated_count));
  return stats;
}

NormalizeResult normalize_loudness(const AudioBuffer& audio, double target_lufs) {
  const LoudnessStats measured = integrated_loudness(audio);
  NormalizeResult result;
  result.gain = std::pow(10.0, (target_lufs - measured.integrated) / 20.0);
  result.audio = audio;
  constexpr double kMaxSample = 32767.0 / 32768.0;
  for (double& s : result.audio.samples) {
    s *= result.gain;
    if (s > kMaxSample) {
      s = kMaxSample;
      ++result.clipped;
    } else if (s < -1.0) {
      s = -1.0;
      ++result.clipped;
    }
  }
  return result;
}

}  // namespace vcbench
