#include "vcbench/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "vcbench/errors.hpp"

namespace vcbench {
namespace {

using json = nlohmann::json;

std::string group_key(const SessionResult& s,
                      const std::vector<std::string>& group_by) {
  std::string key;
  for (const auto& field : group_by) {
    if (!key.empty()) key += ',';
    if (field == "platform") {
      key += "platform=" + s.platform;
    } else if (field == "n") {
      key += "n=" + std::to_string(s.n);
    } else if (field == "scenario") {
      key += "scenario=" + s.scenario;
    } else {
      throw InputError("unknown group-by field: " + field);
    }
  }
  return key.empty() ? "all" : key;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) != 0) ? c : '-';
  return out;
}

}  // namespace

void emit_cdf(const std::vector<double>& samples,
              const std::filesystem::path& path) {
  if (samples.empty()) throw EmptySamples("cannot emit a CDF of zero samples");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << "value,fraction\n";
  char line[64];
  const auto n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.9g,%.9g\n", sorted[i],
                  static_cast<double>(i + 1) / n);
    out << line;
  }
}

SessionResult load_session_result(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  if (j.value("schema_version", "") != kResultSchema)
    throw SchemaMismatch(path.string() + ": expected schema " +
                         std::string(kResultSchema));

  SessionResult result;
  try {
    const auto& session = j.at("session");
    result.id = session.value("id", path.stem().string());
    result.platform = session.value("platform", "unknown");
    result.n = session.value("n", 1);
    result.scenario = session.value("scenario", "");
    if (j.contains("metrics"))
      for (const auto& [name, value] : j["metrics"].items())
        result.metrics[name] = value.get<double>();
    if (j.contains("samples"))
      for (const auto& [name, values] : j["samples"].items())
        result.samples[name] = values.get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return result;
}

void write_session_result(const SessionResult& result,
                          const std::filesystem::path& path) {
  json j;
  j["schema_version"] = kResultSchema;
  j["session"] = {{"id", result.id},
                  {"platform", result.platform},
                  {"n", result.n},
                  {"scenario", result.scenario}};
  j["metrics"] = result.metrics;
  if (!result.samples.empty()) j["samples"] = result.samples;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Report aggregate(const std::vector<SessionResult>& sessions,
                 const std::vector<std::string>& group_by) {
  Report report;
  report.group_by = group_by;
  report.sessions = sessions;

  std::map<std::string, std::map<std::string, std::vector<double>>> pooled;
  for (const auto& s : sessions) {
    const std::string key = group_key(s, group_by);
    ++report.groups[key].session_count;
    for (const auto& [metric, value] : s.metrics)
      pooled[key][metric].push_back(value);
  }
  for (auto& [key, metrics] : pooled) {
    for (auto& [metric, values] : metrics) {
      MetricStats stats;
      stats.count = values.size();
      double sum = 0.0;
      for (double v : values) sum += v;
      stats.mean = sum / static_cast<double>(values.size());
      double sq = 0.0;
      for (double v : values) sq += (v - stats.mean) * (v - stats.mean);
      stats.stddev = std::sqrt(sq / static_cast<double>(values.size()));
      report.groups[key].metrics[metric] = stats;
    }
  }
  return report;
}

std::map<std::string, std::map<std::string, double>> qoe_delta(
    const Report& low_motion, const Report& high_motion) {
  std::map<std::string, std::map<std::string, double>> delta;
  if (low_motion.groups.size() != high_motion.groups.size())
    throw KeyMismatch("reports group differently");
  for (const auto& [key, low_stats] : low_motion.groups) {
    const auto it = high_motion.groups.find(key);
    if (it == high_motion.groups.end())
      throw KeyMismatch("group missing from the high-motion report: " + key);
    for (const auto& [metric, low_metric] : low_stats.metrics) {
      const auto mit = it->second.metrics.find(metric);
      if (mit == it->second.metrics.end()) continue;
      delta[key][metric] = low_metric.mean - mit->second.mean;
    }
  }
  return delta;
}

namespace {

json report_to_json(const Report& report) {
  json j;
  j["schema_version"] = kReportSchema;
  j["generated_at_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  j["group_by"] = report.group_by;
  json groups = json::object();
  for (const auto& [key, stats] : report.groups) {
    json metrics = json::object();
    for (const auto& [metric, ms] : stats.metrics)
      metrics[metric] = {{"mean", ms.mean},
                         {"stddev", ms.stddev},
                         {"count", ms.count}};
    groups[key] = {{"sessions", stats.session_count}, {"metrics", metrics}};
  }
  j["groups"] = groups;
  json sessions = json::array();
  for (const auto& s : report.sessions)
    sessions.push_back({{"id", s.id},
                        {"platform", s.platform},
                        {"n", s.n},
                        {"scenario", s.scenario},
                        {"metrics", s.metrics}});
  j["sessions"] = sessions;
  return j;
}

}  // namespace

void write_report(const Report& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << report_to_json(report).dump(2) << '\n';
}

Report load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  if (j.value("schema_version", "") != kReportSchema)
    throw SchemaMismatch(path.string() + ": expected schema " +
                         std::string(kReportSchema));
  Report report;
  try {
    report.group_by = j.value("group_by", std::vector<std::string>{});
    for (const auto& [key, g] : j.at("groups").items()) {
      GroupStats stats;
      stats.session_count = g.value("sessions", 0u);
      for (const auto& [metric, ms] : g.at("metrics").items())
        stats.metrics[metric] = {ms.at("mean").get<double>(),
                                 ms.at("stddev").get<double>(),
                                 ms.value("count", 0u)};
      report.groups[key] = std::move(stats);
    }
    for (const auto& s : j.value("sessions", json::array())) {
      SessionResult sr;
      sr.id = s.value("id", "");
      sr.platform = s.value("platform", "unknown");
      sr.n = s.value("n", 1);
      sr.scenario = s.value("scenario", "");
      if (s.contains("metrics"))
        for (const auto& [name, value] : s["metrics"].items())
          sr.metrics[name] = value.get<double>();
      report.sessions.push_back(std::move(sr));
    }
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return report;
}

void write_group_cdfs(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::map<std::string, std::map<std::string, std::vector<double>>> pooled;
  for (const auto& s : report.sessions) {
    const std::string key = group_key(s, report.group_by);
    for (const auto& [name, values] : s.samples) {
      auto& bucket = pooled[key][name];
      bucket.insert(bucket.end(), values.begin(), values.end());
    }
  }
  for (const auto& [key, by_name] : pooled)
    for (const auto& [name, values] : by_name)
      emit_cdf(values, dir / (sanitize(key) + "_" + sanitize(name) + ".csv"));
}

}  // namespace vcbench
