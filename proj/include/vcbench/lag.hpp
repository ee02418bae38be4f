#pragma once

#include <cstddef>
#include <vector>

#include "vcbench/packet.hpp"

namespace vcbench {

struct OnsetDetectorConfig {
  std::uint32_t size_threshold = 200;  // bytes of L7 payload
  double quiescence = 1.0;             // seconds
  double period_hint = 2.0;            // seconds
};

// First big packet after a quiescent period: the arrival of a non-blank
// video signal.
struct Onset {
  double timestamp = 0.0;
  std::size_t packet_index = 0;
};

struct LagSample {
  double sender_onset = 0.0;
  double receiver_onset = 0.0;
  double lag = 0.0;  // receiver_onset - sender_onset
};

struct PairingResult {
  std::vector<LagSample> samples;  // sorted by sender_onset
  std::size_t unmatched_sender = 0;
  std::size_t unmatched_receiver = 0;
};

// Every record with payload_len > size_threshold whose gap since the
// previous such record strictly exceeds quiescence; the first qualifying
// record in the trace is always an onset.
std::vector<Onset> detect_onsets(const Trace& trace, Direction direction,
                                 const OnsetDetectorConfig& cfg = {});

// Pairs each receiver onset with the latest sender onset at or before it
// within period_hint/2. Each sender onset matches at most one receiver
// onset (earliest receiver wins). Throws NegativeLag when a receiver onset
// precedes its only nearby sender onset, which signals clock misalignment.
PairingResult pair_onsets(const std::vector<Onset>& sender,
                          const std::vector<Onset>& receiver,
                          const OnsetDetectorConfig& cfg = {});

class LagDistribution {
 public:
  LagDistribution() = default;
  explicit LagDistribution(std::vector<double> lags);  // sorts

  std::size_t count() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }

  // Nearest-rank percentile, p in [0, 100]. Throws EmptySamples when empty.
  double percentile(double p) const;
  double median() const { return percentile(50.0); }

 private:
  std::vector<double> samples_;
};

LagDistribution lag_distribution(const std::vector<LagSample>& samples);

}  // namespace vcbench
