#include "vcbench/lag.hpp"

#include <algorithm>
#include <cmath>

#include "vcbench/errors.hpp"

namespace vcbench {

namespace {

void check_config(const OnsetDetectorConfig& cfg) {
  if (cfg.size_threshold == 0 || cfg.quiescence <= 0.0 ||
      cfg.quiescence >= cfg.period_hint)
    throw InputError("onset detector needs threshold > 0 and 0 < quiescence < period");
}

}  // namespace

std::vector<Onset> detect_onsets(const Trace& trace, Direction direction,
                                 const OnsetDetectorConfig& cfg) {
  check_config(cfg);
  std::vector<Onset> onsets;
  bool seen_big = false;
  double prev_big = 0.0;
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const PacketRecord& rec = trace.records[i];
    if (rec.direction != direction) continue;
    if (rec.payload_len <= cfg.size_threshold) continue;
    if (!seen_big || rec.timestamp - prev_big > cfg.quiescence)
      onsets.push_back({rec.timestamp, i});
    seen_big = true;
    prev_big = rec.timestamp;
  }
  return onsets;
}

PairingResult pair_onsets(const std::vector<Onset>& sender,
                          const std::vector<Onset>& receiver,
                          const OnsetDetectorConfig& cfg) {
  check_config(cfg);
  const double window = cfg.period_hint / 2.0;
  PairingResult result;
  std::vector<bool> sender_taken(sender.size(), false);

  for (const Onset& recv : receiver) {
    // latest sender onset at or before the receiver onset
    auto it = std::upper_bound(
        sender.begin(), sender.end(), recv.timestamp,
        [](double t, const Onset& o) { return t < o.timestamp; });
    if (it == sender.begin()) {
      // No sender onset precedes this receiver onset. A sender onset just
      // after it means the clocks are misaligned; otherwise the receiver
      // onset is spurious and goes unmatched.
      if (it != sender.end() && it->timestamp - recv.timestamp < window)
        throw NegativeLag("receiver onset precedes its candidate sender onset");
      ++result.unmatched_receiver;
      continue;
    }
    const std::size_t idx = static_cast<std::size_t>(it - sender.begin()) - 1;
    const double lag = recv.timestamp - sender[idx].timestamp;
    if (lag >= window || sender_taken[idx]) {
      ++result.unmatched_receiver;
      continue;
    }
    sender_taken[idx] = true;
    result.samples.push_back({sender[idx].timestamp, recv.timestamp, lag});
  }

  result.unmatched_sender =
      sender.size() - static_cast<std::size_t>(std::count(
                          sender_taken.begin(), sender_taken.end(), true));
  std::sort(result.samples.begin(), result.samples.end(),
            [](const LagSample& a, const LagSample& b) {
              return a.sender_onset < b.sender_onset;
            });
  return result;
}

LagDistribution::LagDistribution(std::vector<double> lags)
    : samples_(std::move(lags)) {
  std::sort(samples_.begin(), samples_.end());
}

double LagDistribution::percentile(double p) const {
  if (samples_.empty()) throw EmptySamples("percentile of zero lag samples");
  const auto n = static_cast<double>(samples_.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  if (rank < 1) rank = 1;
  if (rank > samples_.size()) rank = samples_.size();
  return samples_[rank - 1];
}

LagDistribution lag_distribution(const std::vector<LagSample>& samples) {
  std::vector<double> lags;
  lags.reserve(samples.size());
  for (const auto& s : samples) lags.push_back(s.lag);
  return LagDistribution(std::move(lags));
}

}  // namespace vcbench
