#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace vcbench {

// PCM audio, interleaved, samples normalized from signed 16-bit to
// [-1, 1) on load. Only 48 kHz mono/stereo is accepted; the loudness
// filters are pinned to that rate.
struct AudioBuffer {
  int sample_rate = 48000;
  int channels = 1;
  std::vector<double> samples;

  std::size_t frame_count() const {
    return channels ? samples.size() / static_cast<std::size_t>(channels) : 0;
  }
  double duration() const {
    return static_cast<double>(frame_count()) / sample_rate;
  }
};

// Mean of channels.
AudioBuffer downmix_mono(const AudioBuffer& audio);

// RIFF/WAVE, PCM format 1, 16-bit, 48 kHz, 1-2 channels.
AudioBuffer read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const AudioBuffer& audio);

}  // namespace vcbench
