#include "vcbench/rate.hpp"

#include <cmath>

#include "vcbench/errors.hpp"

namespace vcbench {

RateSeries payload_rate(const Trace& trace, Direction direction,
                        double bin_width) {
  if (!(bin_width > 0.0)) throw InputError("bin_width must be positive");

  RateSeries series;
  series.bin_width = bin_width;
  series.direction = direction;
  series.start = trace.capture_start;
  if (trace.records.empty()) return series;

  const double last = trace.records.back().timestamp;
  const auto bin_count = static_cast<std::size_t>(
      std::floor((last - series.start) / bin_width)) + 1;
  series.bps.assign(bin_count, 0.0);
  for (const auto& rec : trace.records) {
    if (rec.direction != direction) continue;
    auto idx = static_cast<std::size_t>(
        std::floor((rec.timestamp - series.start) / bin_width));
    if (idx >= bin_count) idx = bin_count - 1;
    series.bps[idx] += 8.0 * static_cast<double>(rec.payload_len);
  }
  for (double& v : series.bps) v /= bin_width;
  return series;
}

RateSummary rate_summary(const RateSeries& series, double warmup) {
  RateSummary summary;
  double sum = 0.0;
  for (std::size_t i = 0; i < series.bps.size(); ++i) {
    if (series.bin_start(i) - series.start < warmup) continue;
    sum += series.bps[i];
    ++summary.bins;
  }
  if (summary.bins == 0)
    throw EmptyAfterWarmup("no rate bins remain after warmup");
  summary.mean_bps = sum / static_cast<double>(summary.bins);

  double sq = 0.0;
  for (std::size_t i = 0; i < series.bps.size(); ++i) {
    if (series.bin_start(i) - series.start < warmup) continue;
    const double d = series.bps[i] - summary.mean_bps;
    sq += d * d;
  }
  summary.stddev_bps = std::sqrt(sq / static_cast<double>(summary.bins));
  return summary;
}

}  // namespace vcbench
