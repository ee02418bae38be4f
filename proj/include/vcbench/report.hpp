#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace vcbench {

inline constexpr const char* kResultSchema = "vcbench-result/1";
inline constexpr const char* kReportSchema = "vcbench-report/1";

// CSV of (value, cumulative fraction), fraction i/n at the i-th sorted
// value. Throws EmptySamples on empty input.
void emit_cdf(const std::vector<double>& samples,
              const std::filesystem::path& path);

// One analyzed session: scalar metrics plus optional named sample arrays
// (e.g. lag samples for CDF emission).
struct SessionResult {
  std::string id;
  std::string platform = "unknown";
  int n = 1;
  std::string scenario;
  std::map<std::string, double> metrics;
  std::map<std::string, std::vector<double>> samples;
};

SessionResult load_session_result(const std::filesystem::path& path);
void write_session_result(const SessionResult& result,
                          const std::filesystem::path& path);

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
  std::size_t count = 0;
};

struct GroupStats {
  std::size_t session_count = 0;
  std::map<std::string, MetricStats> metrics;
};

struct Report {
  std::vector<std::string> group_by;  // subset of {platform, n, scenario}
  std::vector<SessionResult> sessions;
  std::map<std::string, GroupStats> groups;
};

// Groups sessions by the requested keys and computes per-metric mean and
// population stddev. Permutation-invariant over sessions.
Report aggregate(const std::vector<SessionResult>& sessions,
                 const std::vector<std::string>& group_by);

// Per-group, per-metric reduction low - high over the metrics both reports
// carry. Throws KeyMismatch when the group keys differ.
std::map<std::string, std::map<std::string, double>> qoe_delta(
    const Report& low_motion, const Report& high_motion);

void write_report(const Report& report, const std::filesystem::path& path);
Report load_report(const std::filesystem::path& path);

// Pools each named sample array across every session of each group and
// emits one CDF file per (group, name) under dir.
void write_group_cdfs(const Report& report, const std::filesystem::path& dir);

}  // namespace vcbench
