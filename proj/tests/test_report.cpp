#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "testutil.hpp"
#include "vcbench/errors.hpp"
#include "vcbench/report.hpp"
#include "vcbench/video_metrics.hpp"

using namespace vcbench;

namespace {

std::vector<std::pair<double, double>> read_cdf(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in);
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "value,fraction");
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    double v = 0.0, f = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &v, &f) == 2);
    rows.emplace_back(v, f);
  }
  return rows;
}

SessionResult session(const std::string& id, const std::string& platform, int n,
                      const std::string& scenario, double ssim) {
  SessionResult s;
  s.id = id;
  s.platform = platform;
  s.n = n;
  s.scenario = scenario;
  s.metrics["ssim"] = ssim;
  return s;
}

}  // namespace

TEST_CASE("emit_cdf: fractions step by 1/n over the sorted values") {
  const auto dir = testutil::temp_dir("cdf");

  emit_cdf({3.0, 1.0, 2.0}, dir / "three.csv");
  const auto rows = read_cdf(dir / "three.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].first == doctest::Approx(1.0));
  CHECK(rows[0].second == doctest::Approx(1.0 / 3.0));
  CHECK(rows[1].second == doctest::Approx(2.0 / 3.0));
  CHECK(rows[2].first == doctest::Approx(3.0));
  CHECK(rows[2].second == doctest::Approx(1.0));

  emit_cdf({0.5}, dir / "one.csv");
  const auto single = read_cdf(dir / "one.csv");
  REQUIRE(single.size() == 1);
  CHECK(single[0].second == doctest::Approx(1.0));

  CHECK_THROWS_AS(emit_cdf({}, dir / "none.csv"), EmptySamples);
  std::filesystem::remove_all(dir);
}

TEST_CASE("emit_cdf: monotone in both columns, ending at exactly 1") {
  const auto dir = testutil::temp_dir("cdf_prop");
  std::mt19937_64 rng(8);
  std::vector<double> samples;
  for (int i = 0; i < 700; ++i) samples.push_back(testutil::u01(rng) * 0.2);
  emit_cdf(samples, dir / "lags.csv");
  const auto rows = read_cdf(dir / "lags.csv");
  REQUIRE(rows.size() == 700);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].first >= rows[i - 1].first);
    CHECK(rows[i].second >= rows[i - 1].second);
  }
  CHECK(rows.back().second == doctest::Approx(1.0));
  std::filesystem::remove_all(dir);
}

TEST_CASE("aggregate: group means and population stddev") {
  const std::vector<SessionResult> sessions{
      session("a", "zoom", 3, "low", 0.9), session("b", "zoom", 3, "low", 0.7),
      session("c", "meet", 3, "low", 0.8)};
  const Report report = aggregate(sessions, {"platform", "n"});

  REQUIRE(report.groups.count("platform=zoom,n=3") == 1);
  const auto& zoom = report.groups.at("platform=zoom,n=3");
  CHECK(zoom.session_count == 2);
  CHECK(zoom.metrics.at("ssim").mean == doctest::Approx(0.8));
  CHECK(zoom.metrics.at("ssim").stddev == doctest::Approx(0.1));
  CHECK(zoom.metrics.at("ssim").count == 2);

  const auto& meet = report.groups.at("platform=meet,n=3");
  CHECK(meet.session_count == 1);
  CHECK(meet.metrics.at("ssim").stddev == doctest::Approx(0.0));
}

TEST_CASE("aggregate: permutation invariance over sessions") {
  std::vector<SessionResult> sessions{
      session("a", "zoom", 2, "low", 0.91), session("b", "zoom", 2, "low", 0.72),
      session("c", "webex", 5, "high", 0.55), session("d", "webex", 5, "high", 0.61)};
  const Report forward = aggregate(sessions, {"platform", "n"});
  std::reverse(sessions.begin(), sessions.end());
  const Report backward = aggregate(sessions, {"platform", "n"});
  for (const auto& [key, stats] : forward.groups) {
    const auto& other = backward.groups.at(key);
    for (const auto& [metric, ms] : stats.metrics) {
      CHECK(ms.mean == doctest::Approx(other.metrics.at(metric).mean));
      CHECK(ms.stddev == doctest::Approx(other.metrics.at(metric).stddev));
    }
  }
}

TEST_CASE("qoe_delta: per-metric reductions") {
  const Report low = aggregate({session("a", "zoom", 3, "low", 0.92)}, {"platform"});
  const Report high = aggregate({session("b", "zoom", 3, "high", 0.73)}, {"platform"});

  SUBCASE("identical reports give zero deltas") {
    const auto delta = qoe_delta(low, low);
    CHECK(delta.at("platform=zoom").at("ssim") == doctest::Approx(0.0));
  }
  SUBCASE("plain subtraction") {
    const auto delta = qoe_delta(low, high);
    CHECK(delta.at("platform=zoom").at("ssim") == doctest::Approx(0.19));
  }
  SUBCASE("mismatched group keys throw") {
    const Report other =
        aggregate({session("c", "meet", 3, "high", 0.7)}, {"platform"});
    CHECK_THROWS_AS(qoe_delta(low, other), KeyMismatch);
  }
}

TEST_CASE("session results: write, reload, schema guard") {
  const auto dir = testutil::temp_dir("results");
  SessionResult s = session("s1", "webex", 4, "high", 0.66);
  s.metrics["psnr_db"] = 31.5;
  s.samples["lag_s"] = {0.04, 0.05, 0.041};
  write_session_result(s, dir / "s1.json");

  const SessionResult reread = load_session_result(dir / "s1.json");
  CHECK(reread.id == "s1");
  CHECK(reread.platform == "webex");
  CHECK(reread.n == 4);
  CHECK(reread.metrics.at("psnr_db") == doctest::Approx(31.5));
  REQUIRE(reread.samples.at("lag_s").size() == 3);

  {
    std::ofstream bad(dir / "bad.json");
    bad << R"({"schema_version": "someone-else/9", "session": {}})";
  }
  CHECK_THROWS_AS(load_session_result(dir / "bad.json"), SchemaMismatch);
  std::filesystem::remove_all(dir);
}

TEST_CASE("degradation model orders low- against high-motion QoE") {
  // five sessions per motion class through the codec stand-in at one
  // budget; busier content must score lower
  auto run_sessions = [](double step, const std::string& scenario) {
    std::vector<SessionResult> sessions;
    for (int i = 0; i < 5; ++i) {
      const auto ref = testutil::moving_sequence(
          64, 64, 8, 500 + static_cast<std::uint64_t>(i), step);
      const auto deg = testutil::codec_proxy(ref, 4.0);
      SessionResult s;
      s.id = scenario + std::to_string(i);
      s.platform = "sim";
      s.n = 2;
      s.scenario = scenario;
      s.metrics["ssim"] =
          vcbench::sequence_score(ref, deg, vcbench::VideoMetric::ssim).aggregate;
      s.metrics["psnr_db"] =
          vcbench::sequence_score(ref, deg, vcbench::VideoMetric::psnr).aggregate;
      sessions.push_back(s);
    }
    return sessions;
  };

  const Report low = aggregate(run_sessions(0.05, "low"), {"platform", "n"});
  const Report high = aggregate(run_sessions(0.6, "high"), {"platform", "n"});
  const auto& low_stats = low.groups.at("platform=sim,n=2").metrics;
  const auto& high_stats = high.groups.at("platform=sim,n=2").metrics;
  CHECK(low_stats.at("ssim").mean > high_stats.at("ssim").mean);
  CHECK(low_stats.at("psnr_db").mean > high_stats.at("psnr_db").mean);

  // the reductions of the motion change are non-negative across metrics
  const auto delta = qoe_delta(low, high);
  for (const auto& [metric, value] : delta.at("platform=sim,n=2"))
    CHECK(value >= 0.0);
}

TEST_CASE("reports: round trip and grouped CDF emission") {
  const auto dir = testutil::temp_dir("report");
  SessionResult a = session("a", "zoom", 3, "low", 0.9);
  a.samples["lag_s"] = {0.01, 0.03};
  SessionResult b = session("b", "zoom", 3, "low", 0.8);
  b.samples["lag_s"] = {0.02};

  const Report report = aggregate({a, b}, {"platform"});
  write_report(report, dir / "report.json");
  const Report reread = load_report(dir / "report.json");
  CHECK(reread.groups.at("platform=zoom").session_count == 2);
  CHECK(reread.groups.at("platform=zoom").metrics.at("ssim").mean ==
        doctest::Approx(0.85));

  write_group_cdfs(report, dir / "cdfs");
  const auto rows = read_cdf(dir / "cdfs" / "platform-zoom_lag-s.csv");
  REQUIRE(rows.size() == 3);  // pooled across both sessions
  CHECK(rows[0].first == doctest::Approx(0.01));
  CHECK(rows[2].second == doctest::Approx(1.0));
  std::filesystem::remove_all(dir);
}
