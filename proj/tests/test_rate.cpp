#include <doctest.h>

#include <random>

#include "testutil.hpp"
#include "vcbench/errors.hpp"
#include "vcbench/rate.hpp"
#include "vcbench/simulator.hpp"

using namespace vcbench;

namespace {
constexpr Ipv4 kLocal = 0x0a000001;
}

TEST_CASE("payload_rate: ten 1200-byte packets in one second") {
  std::vector<testutil::PacketSpec> specs;
  for (int i = 0; i < 10; ++i) specs.push_back({0.05 * i, false, 1200});
  const Trace trace = testutil::make_trace(kLocal, specs);
  const RateSeries series = payload_rate(trace, Direction::inbound, 1.0);
  REQUIRE(series.bps.size() == 1);
  CHECK(series.bps[0] == doctest::Approx(96000.0));
}

TEST_CASE("payload_rate: empty trace yields an empty series") {
  const RateSeries series = payload_rate(Trace{}, Direction::inbound, 1.0);
  CHECK(series.bps.empty());
}

TEST_CASE("payload_rate: direction filter") {
  const Trace trace = testutil::make_trace(
      kLocal, {{0.1, true, 1000}, {0.2, false, 500}, {0.7, true, 1000}});
  const RateSeries up = payload_rate(trace, Direction::outbound, 1.0);
  const RateSeries down = payload_rate(trace, Direction::inbound, 1.0);
  CHECK(up.bps[0] == doctest::Approx(16000.0));
  CHECK(down.bps[0] == doctest::Approx(4000.0));
}

TEST_CASE("payload_rate: byte conservation on random traces") {
  std::mt19937_64 rng(123);
  for (int round = 0; round < 200; ++round) {
    std::vector<testutil::PacketSpec> specs;
    std::uint64_t total = 0;
    const int n = 1 + static_cast<int>(rng() % 300);
    for (int i = 0; i < n; ++i) {
      testutil::PacketSpec spec;
      spec.t = 30.0 * testutil::u01(rng);
      spec.outbound = false;
      spec.payload = static_cast<std::uint32_t>(rng() % 1500);
      total += spec.payload;
      specs.push_back(spec);
    }
    const Trace trace = testutil::make_trace(kLocal, specs);
    const double width = (round % 3 == 0) ? 0.5 : (round % 3 == 1) ? 1.0 : 2.0;
    const RateSeries series = payload_rate(trace, Direction::inbound, width);
    double reintegrated = 0.0;
    for (double bps : series.bps) reintegrated += bps * width / 8.0;
    CHECK(reintegrated == static_cast<double>(total));
  }
}

TEST_CASE("payload_rate: invariant under in-bin reordering") {
  const Trace a = testutil::make_trace(
      kLocal, {{0.1, false, 100}, {0.5, false, 200}, {0.9, false, 300}});
  const Trace b = testutil::make_trace(
      kLocal, {{0.9, false, 100}, {0.1, false, 200}, {0.5, false, 300}});
  const RateSeries ra = payload_rate(a, Direction::inbound, 1.0);
  const RateSeries rb = payload_rate(b, Direction::inbound, 1.0);
  REQUIRE(ra.bps.size() == rb.bps.size());
  CHECK(ra.bps[0] == rb.bps[0]);
}

TEST_CASE("rate_summary: mean and population stddev") {
  RateSeries series;
  series.bin_width = 1.0;
  series.start = 0.0;

  SUBCASE("constant bins after warmup") {
    series.bps = {9e9, 9e9, 9e9, 9e9, 9e9, 1000.0, 1000.0, 1000.0};
    const RateSummary s = rate_summary(series, 5.0);
    CHECK(s.bins == 3);
    CHECK(s.mean_bps == doctest::Approx(1000.0));
    CHECK(s.stddev_bps == doctest::Approx(0.0));
  }
  SUBCASE("two bins") {
    series.bps = {500.0, 1500.0};
    const RateSummary s = rate_summary(series, 0.0);
    CHECK(s.mean_bps == doctest::Approx(1000.0));
    CHECK(s.stddev_bps == doctest::Approx(500.0));
  }
  SUBCASE("everything inside warmup") {
    series.bps = {500.0, 1500.0};
    CHECK_THROWS_AS(rate_summary(series, 10.0), EmptyAfterWarmup);
  }
}

TEST_CASE("payload_rate: bin width must be positive") {
  CHECK_THROWS_AS(payload_rate(Trace{}, Direction::inbound, 0.0), InputError);
}

TEST_CASE("rate summaries straddle the observed per-session bands") {
  // two-user sessions run near 1.8 Mbps, larger sessions near 0.5 Mbps;
  // the measured means must land inside those bands
  auto measure = [](double offered, int clients) {
    SimConfig cfg;
    cfg.seed = 55;
    cfg.duration = 15.0;
    cfg.topology = TopologyKind::shared_relay;
    for (int i = 0; i < clients; ++i)
      cfg.clients.push_back({0x0a000001 + static_cast<Ipv4>(i),
                             i == 0 ? Role::host : Role::participant, 0.0});
    cfg.shared_relay = 0x05050505;
    cfg.media_port = 19305;
    cfg.flash_burst.packet_count = 0;
    cfg.background.rate_pps = 0.0;
    cfg.offered_rate = offered;
    const SimOutput out = simulate(cfg);
    const RateSeries series =
        payload_rate(out.traces.at(0x0a000002), Direction::inbound, 1.0);
    return rate_summary(series, 5.0).mean_bps;
  };

  const double two_user = measure(1.8e6, 2);
  const double multi_user = measure(0.5e6, 5);
  CHECK(two_user > 1.6e6);
  CHECK(two_user < 2.0e6);
  CHECK(multi_user > 0.4e6);
  CHECK(multi_user < 0.6e6);
}
