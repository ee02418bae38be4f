#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "testutil.hpp"
#include "vcbench/audio.hpp"
#include "vcbench/audio_align.hpp"
#include "vcbench/errors.hpp"
#include "vcbench/loudness.hpp"

using namespace vcbench;
using testutil::near;

TEST_CASE("integrated_loudness: BS.1770 conformance tones") {
  // 997 Hz sine, full scale, 10 s -> -3.01 LUFS
  const AudioBuffer full = testutil::sine_wave(997.0, 32767.0 / 32768.0, 10.0);
  const LoudnessStats at_fs = integrated_loudness(full);
  CHECK(near(at_fs.integrated, -3.01, 0.1));
  CHECK(at_fs.gating_block_count > 0);

  // the same tone at -20 dBFS
  const AudioBuffer quiet =
      testutil::sine_wave(997.0, 0.1 * 32767.0 / 32768.0, 10.0);
  CHECK(near(integrated_loudness(quiet).integrated, -23.01, 0.1));
}

TEST_CASE("integrated_loudness: silence is fully gated") {
  AudioBuffer silence;
  silence.samples.assign(48000, 0.0);
  CHECK_THROWS_AS(integrated_loudness(silence), AllGated);
}

TEST_CASE("integrated_loudness: too-short input") {
  AudioBuffer snippet;
  snippet.samples.assign(4800, 0.5);  // 100 ms
  CHECK_THROWS_AS(integrated_loudness(snippet), TooShort);
}

TEST_CASE("integrated_loudness: gain linearity") {
  const AudioBuffer base = testutil::speechlike_noise(6.0, 31, 0.5);
  const double reference = integrated_loudness(base).integrated;
  for (const double gain : {0.5, 0.25}) {
    AudioBuffer scaled = base;
    for (double& s : scaled.samples) s *= gain;
    const double measured = integrated_loudness(scaled).integrated;
    CHECK(near(measured, reference + 20.0 * std::log10(gain), 0.05));
  }
}

TEST_CASE("integrated_loudness: stereo sums channel power") {
  const AudioBuffer mono = testutil::sine_wave(997.0, 0.25, 5.0, 1);
  const AudioBuffer stereo = testutil::sine_wave(997.0, 0.25, 5.0, 2);
  const double mono_lufs = integrated_loudness(mono).integrated;
  const double stereo_lufs = integrated_loudness(stereo).integrated;
  CHECK(near(stereo_lufs, mono_lufs + 3.01, 0.05));
}

TEST_CASE("normalize_loudness: hits the target within 0.1 LU") {
  const AudioBuffer voice = testutil::speechlike_noise(6.0, 32, 0.2);

  SUBCASE("already at target") {
    const NormalizeResult first = normalize_loudness(voice, -23.0);
    const NormalizeResult again = normalize_loudness(first.audio, -23.0);
    CHECK(near(again.gain, 1.0, 0.02));
  }
  SUBCASE("10 dB below target") {
    NormalizeResult at_33 = normalize_loudness(voice, -33.0);
    const NormalizeResult lifted = normalize_loudness(at_33.audio, -23.0);
    CHECK(near(20.0 * std::log10(lifted.gain), 10.0, 0.1));
    CHECK(near(integrated_loudness(lifted.audio).integrated, -23.0, 0.1));
    CHECK(lifted.clipped == 0);
  }
  SUBCASE("gaining near-full-scale audio reports clipping") {
    const AudioBuffer loud = testutil::sine_wave(997.0, 0.9, 2.0);
    const NormalizeResult boosted = normalize_loudness(loud, -0.5);
    CHECK(boosted.clipped > 0);
    for (double s : boosted.audio.samples) {
      CHECK(s <= 32767.0 / 32768.0);
      CHECK(s >= -1.0);
    }
  }
}

TEST_CASE("find_offset: delays recovered within 10 ms") {
  const AudioBuffer ref = testutil::speechlike_noise(12.0, 33, 0.4);

  SUBCASE("identical signals") {
    CHECK(std::fabs(find_offset(ref, ref, 2.0)) <= 0.010);
  }
  SUBCASE("exact half-second delay") {
    const AudioBuffer deg = testutil::delay_audio(ref, 0.5);
    CHECK(near(find_offset(ref, deg, 2.0), 0.5, 0.010));
  }
  SUBCASE("fractional-hop delay with additive noise at 10 dB SNR") {
    const AudioBuffer delayed = testutil::delay_audio(ref, 2.317);
    const AudioBuffer deg = testutil::mix_noise(delayed, 10.0, 34);
    const double found = find_offset(ref, deg, 5.0);
    CHECK(near(found, 2.317, 0.010));

    // brute-force sample-domain cross-correlation confirms the lag
    const AudioBuffer ref_mono = downmix_mono(ref);
    const AudioBuffer deg_mono = downmix_mono(deg);
    const int decim = 16;  // 3 kHz grid, 1/3 ms resolution
    std::vector<double> a, b;
    for (std::size_t i = 0; i < ref_mono.samples.size(); i += decim)
      a.push_back(ref_mono.samples[i]);
    for (std::size_t i = 0; i < deg_mono.samples.size(); i += decim)
      b.push_back(deg_mono.samples[i]);
    double best = -1.0;
    long best_lag = 0;
    const long max_lag = static_cast<long>(5.0 * 48000 / decim);
    for (long lag = 0; lag <= max_lag; ++lag) {
      double dot = 0.0;
      const long n = std::min(static_cast<long>(a.size()),
                              static_cast<long>(b.size()) - lag);
      for (long i = 0; i < n; ++i)
        dot += a[static_cast<std::size_t>(i)] *
               b[static_cast<std::size_t>(i + lag)];
      if (dot > best) {
        best = dot;
        best_lag = lag;
      }
    }
    const double oracle_lag = static_cast<double>(best_lag) * decim / 48000.0;
    CHECK(near(oracle_lag, 2.317, 0.002));
    CHECK(near(found, oracle_lag, 0.010));
  }
  SUBCASE("uncorrelated signals have no confident peak") {
    const AudioBuffer other = testutil::speechlike_noise(12.0, 99, 0.4);
    CHECK_THROWS_AS(find_offset(ref, other, 2.0), NoConfidentPeak);
  }
  SUBCASE("sub-second inputs are rejected") {
    AudioBuffer blip;
    blip.samples.assign(24000, 0.1);
    CHECK_THROWS_AS(find_offset(blip, blip, 1.0), TooShort);
  }
}

TEST_CASE("find_offset: periodic content resolves toward the smallest shift") {
  // a steady tone correlates equally well at every beat multiple; identical
  // inputs must still align at zero
  const AudioBuffer tone = testutil::sine_wave(440.0, 0.4, 2.0);
  CHECK(find_offset(tone, tone, 2.0) == 0.0);
}

TEST_CASE("find_offset: property over several injected delays") {
  const AudioBuffer ref = testutil::speechlike_noise(12.0, 35, 0.4);
  for (const double d : {0.1, 0.5, 2.0, 5.0}) {
    const AudioBuffer deg = testutil::delay_audio(ref, d);
    CHECK(near(find_offset(ref, deg, 6.0), d, 0.010));
  }
}

TEST_CASE("trim_align: overlap arithmetic is exact") {
  const AudioBuffer ref = testutil::speechlike_noise(4.0, 36, 0.3);

  SUBCASE("zero offset trims to the common length") {
    AudioBuffer longer = ref;
    longer.samples.resize(longer.samples.size() + 4800, 0.0);
    const auto [a, b] = trim_align(ref, longer, 0.0);
    CHECK(a.samples.size() == ref.samples.size());
    CHECK(b.samples.size() == ref.samples.size());
  }
  SUBCASE("positive offset drops the head of the degraded signal") {
    const AudioBuffer deg = testutil::delay_audio(ref, 0.5);
    const auto [a, b] = trim_align(ref, deg, 0.5);
    CHECK(a.samples.size() == b.samples.size());
    CHECK(a.samples.size() == ref.samples.size());
    // the aligned signals now match sample-for-sample
    for (std::size_t i = 0; i < a.samples.size(); i += 997)
      CHECK(a.samples[i] == doctest::Approx(b.samples[i]));
  }
  SUBCASE("negative offset drops the head of the reference") {
    const auto [a, b] = trim_align(ref, ref, -0.5);
    const std::size_t expect = ref.samples.size() - 24000;
    CHECK(a.samples.size() == expect);
    CHECK(b.samples.size() == expect);
    CHECK(a.samples[0] == doctest::Approx(ref.samples[24000]));
  }
  SUBCASE("no overlap throws") {
    CHECK_THROWS_AS(trim_align(ref, ref, 100.0), EmptyOverlap);
  }
}

TEST_CASE("wav io: round trip and format checks") {
  const auto dir = testutil::temp_dir("wav");
  const AudioBuffer tone = testutil::sine_wave(500.0, 0.5, 0.25);
  write_wav(dir / "tone.wav", tone);
  const AudioBuffer reread = read_wav(dir / "tone.wav");
  REQUIRE(reread.samples.size() == tone.samples.size());
  CHECK(reread.channels == 1);
  for (std::size_t i = 0; i < tone.samples.size(); i += 37)
    CHECK(near(reread.samples[i], tone.samples[i], 1.0 / 32768.0));

  {
    std::ofstream bad(dir / "bad.wav", std::ios::binary);
    bad << "RIFFxxxxNOPE";
  }
  CHECK_THROWS_AS(read_wav(dir / "bad.wav"), UnsupportedAudioFormat);
  std::filesystem::remove_all(dir);
}

TEST_CASE("export_pair: canonical 44-byte-header WAV files") {
  const auto dir = testutil::temp_dir("pair");
  const AudioBuffer second = testutil::sine_wave(440.0, 0.4, 1.0);

  const ExportedPair files =
      export_pair(second, second, (dir / "aligned_").string());
  CHECK(std::filesystem::file_size(files.reference_path) == 96044);
  CHECK(std::filesystem::file_size(files.degraded_path) == 96044);

  // stereo input lands as a mono downmix
  const AudioBuffer stereo = testutil::sine_wave(440.0, 0.4, 1.0, 2);
  const ExportedPair mixed = export_pair(stereo, stereo, (dir / "mix_").string());
  const AudioBuffer mono = read_wav(mixed.reference_path);
  CHECK(mono.channels == 1);
  CHECK(mono.frame_count() == 48000);

  CHECK_THROWS_AS(export_pair(AudioBuffer{}, second, (dir / "x_").string()),
                  InputError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("downmix_mono averages channels") {
  AudioBuffer stereo;
  stereo.channels = 2;
  stereo.samples = {0.5, -0.5, 0.25, 0.75, -1.0, 1.0};
  const AudioBuffer mono = downmix_mono(stereo);
  REQUIRE(mono.samples.size() == 3);
  CHECK(mono.samples[0] == doctest::Approx(0.0));
  CHECK(mono.samples[1] == doctest::Approx(0.5));
  CHECK(mono.samples[2] == doctest::Approx(0.0));
}

TEST_CASE("read_wav: corrupted files fail cleanly") {
  const auto dir = testutil::temp_dir("wav_fuzz");
  std::mt19937_64 rng(3141);
  const AudioBuffer tone = testutil::sine_wave(300.0, 0.3, 0.5);
  write_wav(dir / "base.wav", tone);
  std::ifstream in(dir / "base.wav", std::ios::binary);
  std::vector<char> base((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());

  for (int round = 0; round < 200; ++round) {
    auto mutated = base;
    if (round % 2 == 0) {
      for (int k = 0; k < 6; ++k)
        mutated[rng() % mutated.size()] = static_cast<char>(rng());
    } else {
      mutated.resize(rng() % mutated.size());
    }
    const auto path = dir / "mut.wav";
    {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out.write(mutated.data(), static_cast<std::streamsize>(mutated.size()));
    }
    try {
      const AudioBuffer buf = read_wav(path);
      CHECK(buf.channels >= 1);
    } catch (const InputError&) {
      // defined failure
    }
  }
  std::filesystem::remove_all(dir);
}
