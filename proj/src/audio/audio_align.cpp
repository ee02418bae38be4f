#include "vcbench/audio_align.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vcbench/errors.hpp"

namespace vcbench {
namespace {

constexpr double kHopSeconds = 0.020;
constexpr double kWindowSeconds = 0.040;
constexpr double kMinPeak = 0.3;
constexpr long kMinOverlapHops = 10;

std::vector<double> log_energy_envelope(const AudioBuffer& mono) {
  const auto hop = static_cast<std::size_t>(kHopSeconds * mono.sample_rate);
  const auto win = static_cast<std::size_t>(kWindowSeconds * mono.sample_rate);
  const std::size_t n = mono.samples.size();

  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    prefix[i + 1] = prefix[i] + mono.samples[i] * mono.samples[i];

  std::vector<double> env;
  for (std::size_t start = 0; start + win <= n; start += hop) {
    const double energy =
        (prefix[start + win] - prefix[start]) / static_cast<double>(win);
    env.push_back(std::log(energy + 1e-12));
  }
  return env;
}

// Pearson correlation of ref[k] against deg[k + lag] over the overlap.
double correlation_at(const std::vector<double>& ref,
                      const std::vector<double>& deg, long lag) {
  const long lo = std::max(0L, -lag);
  const long hi = std::min(static_cast<long>(ref.size()),
                           static_cast<long>(deg.size()) - lag);
  const long n = hi - lo;
  if (n < kMinOverlapHops) return -2.0;  // below any real correlation

  double mr = 0.0, md = 0.0;
  for (long k = lo; k < hi; ++k) {
    mr += ref[static_cast<std::size_t>(k)];
    md += deg[static_cast<std::size_t>(k + lag)];
  }
  mr /= static_cast<double>(n);
  md /= static_cast<double>(n);

  double srd = 0.0, srr = 0.0, sdd = 0.0;
  for (long k = lo; k < hi; ++k) {
    const double a = ref[static_cast<std::size_t>(k)] - mr;
    const double b = deg[static_cast<std::size_t>(k + lag)] - md;
    srd += a * b;
    srr += a * a;
    sdd += b * b;
  }
  const double denom = std::sqrt(srr * sdd);
  if (denom <= 0.0) return -2.0;  // flat envelope
  return srd / denom;
}

}  // namespace

double find_offset(const AudioBuffer& reference, const AudioBuffer& degraded,
                   double max_offset) {
  if (reference.duration() < 1.0 || degraded.duration() < 1.0)
    throw TooShort("offset search needs at least 1 s per signal");

  const AudioBuffer ref = downmix_mono(reference);
  const AudioBuffer deg = downmix_mono(degraded);
  const std::vector<double> env_ref = log_energy_envelope(ref);
  const std::vector<double> env_deg = log_energy_envelope(deg);

  const long max_lag =
      static_cast<long>(std::ceil(max_offset / kHopSeconds));
  long best_lag = 0;
  double best_corr = -2.0;
  // scanned by increasing |lag| so near-ties (periodic content correlates
  // equally well at every beat multiple) resolve toward the smallest shift
  for (long mag = 0; mag <= max_lag; ++mag) {
    for (const long lag : {-mag, mag}) {
      if (lag == 0 && mag != 0) continue;
      const double c = correlation_at(env_ref, env_deg, lag);
      if (c > best_corr + 1e-9) {
        best_corr = c;
        best_lag = lag;
      }
    }
  }
  if (best_corr < kMinPeak)
    throw NoConfidentPeak("envelope correlation peak below 0.3");

  // parabolic refinement around the peak
  double delta = 0.0;
  const double c0 = best_corr;
  const double cm = correlation_at(env_ref, env_deg, best_lag - 1);
  const double cp = correlation_at(env_ref, env_deg, best_lag + 1);
  if (cm > -2.0 && cp > -2.0) {
    const double denom = cm - 2.0 * c0 + cp;
    if (denom < 0.0) delta = std::clamp(0.5 * (cm - cp) / denom, -0.5, 0.5);
  }
  return (static_cast<double>(best_lag) + delta) * kHopSeconds;
}

std::pair<AudioBuffer, AudioBuffer> trim_align(const AudioBuffer& reference,
                                               const AudioBuffer& degraded,
                                               double offset) {
  if (reference.sample_rate != degraded.sample_rate)
    throw UnsupportedAudioFormat("sample rates differ");

  const auto shift =
      static_cast<long>(std::llround(offset * reference.sample_rate));
  const auto n_ref = static_cast<long>(reference.frame_count());
  const auto n_deg = static_cast<long>(degraded.frame_count());

  // reference frame i aligns with degraded frame i + shift
  const long lo = std::max(0L, -shift);
  const long hi = std::min(n_ref, n_deg - shift);
  if (hi <= lo) throw EmptyOverlap("no overlapping audio after alignment");

  auto slice = [](const AudioBuffer& src, long start, long frames) {
    AudioBuffer out;
    out.sample_rate = src.sample_rate;
    out.channels = src.channels;
    const auto begin =
        static_cast<std::size_t>(start) * static_cast<std::size_t>(src.channels);
    const auto len =
        static_cast<std::size_t>(frames) * static_cast<std::size_t>(src.channels);
    out.samples.assign(src.samples.begin() + static_cast<std::ptrdiff_t>(begin),
                       src.samples.begin() + static_cast<std::ptrdiff_t>(begin + len));
    return out;
  };
  return {slice(reference, lo, hi - lo), slice(degraded, lo + shift, hi - lo)};
}

ExportedPair export_pair(const AudioBuffer& reference,
                         const AudioBuffer& degraded,
                         const std::filesystem::path& prefix) {
  if (reference.samples.empty() || degraded.samples.empty())
    throw InputError("cannot export an empty audio buffer");
  ExportedPair out;
  out.reference_path = prefix.string() + "ref.wav";
  out.degraded_path = prefix.string() + "deg.wav";
  write_wav(out.reference_path, downmix_mono(reference));
  write_wav(out.degraded_path, downmix_mono(degraded));
  return out;
}

}  // namespace vcbench
