#pragma once

#include <vector>

#include "vcbench/packet.hpp"

namespace vcbench {

// Layer-7 data rate in contiguous fixed-width bins.
struct RateSeries {
  double bin_width = 1.0;  // seconds
  Direction direction = Direction::inbound;
  double start = 0.0;      // start of the first bin (= capture_start)
  std::vector<double> bps;

  double bin_start(std::size_t i) const {
    return start + static_cast<double>(i) * bin_width;
  }
};

// bin value = 8 * sum(payload_len in bin) / bin_width. Bins span
// capture_start through the trace's last timestamp; an empty trace yields
// an empty series.
RateSeries payload_rate(const Trace& trace, Direction direction,
                        double bin_width = 1.0);

struct RateSummary {
  double mean_bps = 0.0;
  double stddev_bps = 0.0;  // population
  std::size_t bins = 0;
};

// Discards bins that start within the warmup interval. Throws
// EmptyAfterWarmup when nothing remains.
RateSummary rate_summary(const RateSeries& series, double warmup = 5.0);

}  // namespace vcbench
