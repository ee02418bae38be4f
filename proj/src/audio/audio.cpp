#include "vcbench/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "vcbench/errors.hpp"

namespace vcbench {

AudioBuffer downmix_mono(const AudioBuffer& audio) {
  if (audio.channels == 1) return audio;
  AudioBuffer out;
  out.sample_rate = audio.sample_rate;
  out.channels = 1;
  const std::size_t frames = audio.frame_count();
  out.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (int c = 0; c < audio.channels; ++c)
      acc += audio.samples[i * audio.channels + c];
    out.samples[i] = acc / audio.channels;
  }
  return out;
}

namespace {

std::uint32_t rd_u32(const std::uint8_t* p) {
  std::uint32_t v;
  std::memcpy(&v, p, 4);
  return v;  // WAV is little-endian, as is every supported target
}
std::uint16_t rd_u16(const std::uint8_t* p) {
  std::uint16_t v;
  std::memcpy(&v, p, 2);
  return v;
}

}  // namespace

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw UnsupportedAudioFormat(path.string() + ": not a RIFF/WAVE file");

  int channels = 0, rate = 0, bits = 0;
  std::size_t data_off = 0, data_len = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t chunk_len = rd_u32(bytes.data() + pos + 4);
    const std::uint8_t* id = bytes.data() + pos;
    pos += 8;
    if (chunk_len > bytes.size() - pos)
      throw UnsupportedAudioFormat(path.string() + ": truncated chunk");
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (chunk_len < 16)
        throw UnsupportedAudioFormat(path.string() + ": short fmt chunk");
      const std::uint16_t format = rd_u16(bytes.data() + pos);
      channels = rd_u16(bytes.data() + pos + 2);
      rate = static_cast<int>(rd_u32(bytes.data() + pos + 4));
      bits = rd_u16(bytes.data() + pos + 14);
      if (format != 1)
        throw UnsupportedAudioFormat(path.string() + ": only PCM supported");
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_off = pos;
      data_len = chunk_len;
    }
    pos += chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }
  if (channels == 0 || data_off == 0)
    throw UnsupportedAudioFormat(path.string() + ": missing fmt or data chunk");
  if (bits != 16)
    throw UnsupportedAudioFormat(path.string() + ": only 16-bit PCM supported");
  if (rate != 48000)
    throw UnsupportedAudioFormat(path.string() + ": only 48 kHz supported");
  if (channels != 1 && channels != 2)
    throw UnsupportedAudioFormat(path.string() + ": only mono/stereo supported");

  AudioBuffer out;
  out.sample_rate = rate;
  out.channels = channels;
  const std::size_t n = data_len / 2;
  out.samples.resize(n - n % static_cast<std::size_t>(channels));
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    std::int16_t s;
    std::memcpy(&s, bytes.data() + data_off + 2 * i, 2);
    out.samples[i] = static_cast<double>(s) / 32768.0;
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& audio) {
  if (audio.samples.empty()) throw InputError("refusing to write empty audio");

  const auto data_len = static_cast<std::uint32_t>(audio.samples.size() * 2);
  std::vector<std::uint8_t> bytes;
  bytes.reserve(44 + data_len);
  auto u16 = [&bytes](std::uint16_t v) {
    bytes.push_back(static_cast<std::uint8_t>(v));
    bytes.push_back(static_cast<std::uint8_t>(v >> 8));
  };
  auto u32 = [&bytes](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  auto tag = [&bytes](const char* t) { bytes.insert(bytes.end(), t, t + 4); };

  tag("RIFF");
  u32(36 + data_len);
  tag("WAVE");
  tag("fmt ");
  u32(16);
  u16(1);  // PCM
  u16(static_cast<std::uint16_t>(audio.channels));
  u32(static_cast<std::uint32_t>(audio.sample_rate));
  u32(static_cast<std::uint32_t>(audio.sample_rate * audio.channels * 2));
  u16(static_cast<std::uint16_t>(audio.channels * 2));
  u16(16);
  tag("data");
  u32(data_len);
  for (const double s : audio.samples) {
    const auto q = static_cast<long>(std::lround(s * 32768.0));
    const auto clamped =
        static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L));
    u16(static_cast<std::uint16_t>(clamped));
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace vcbench
