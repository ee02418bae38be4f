// vcbench: videoconferencing QoE benchmark toolkit.
//
// Subcommands: lag, endpoints, topology, rate, vqa, aqa, simulate, report.
// Exit codes: 0 success, 2 input error, 3 analysis error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vcbench/audio.hpp"
#include "vcbench/audio_align.hpp"
#include "vcbench/endpoints.hpp"
#include "vcbench/errors.hpp"
#include "vcbench/frame.hpp"
#include "vcbench/lag.hpp"
#include "vcbench/loudness.hpp"
#include "vcbench/pcap.hpp"
#include "vcbench/rate.hpp"
#include "vcbench/report.hpp"
#include "vcbench/simulator.hpp"
#include "vcbench/video_metrics.hpp"
#include "vcbench/y4m.hpp"

namespace {

using json = nlohmann::json;
using namespace vcbench;

std::int64_t now_unix() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

void dump_json(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
}

Trace load_trace(const std::string& path, const std::string& local) {
  if (local.empty()) return parse_capture_file(path);
  return parse_capture_file(path, ipv4_from_string(local));
}

// -- lag ---------------------------------------------------------------

struct LagArgs {
  std::string sender, receiver, out;
  std::string sender_addr, receiver_addr;
  OnsetDetectorConfig cfg;
  double offset_receiver = 0.0;
};

void run_lag(const LagArgs& args) {
  const Trace sender = load_trace(args.sender, args.sender_addr);
  Trace receiver = load_trace(args.receiver, args.receiver_addr);
  if (args.offset_receiver != 0.0)
    receiver = rebase_clock(receiver, args.offset_receiver);

  const auto sender_onsets = detect_onsets(sender, Direction::outbound, args.cfg);
  const auto receiver_onsets =
      detect_onsets(receiver, Direction::inbound, args.cfg);
  const PairingResult pairing =
      pair_onsets(sender_onsets, receiver_onsets, args.cfg);

  json j;
  j["schema_version"] = "vcbench-lag/1";
  j["generated_at_unix"] = now_unix();
  json samples = json::array();
  for (const auto& s : pairing.samples)
    samples.push_back({{"sender_onset", s.sender_onset},
                       {"receiver_onset", s.receiver_onset},
                       {"lag", s.lag}});
  j["samples"] = samples;
  j["count"] = pairing.samples.size();
  j["unmatched_sender"] = pairing.unmatched_sender;
  j["unmatched_receiver"] = pairing.unmatched_receiver;
  if (!pairing.samples.empty()) {
    const LagDistribution dist = lag_distribution(pairing.samples);
    j["median_ms"] = dist.median() * 1e3;
    j["p10_ms"] = dist.percentile(10.0) * 1e3;
    j["p90_ms"] = dist.percentile(90.0) * 1e3;
  } else {
    j["median_ms"] = nullptr;
    j["p10_ms"] = nullptr;
    j["p90_ms"] = nullptr;
  }
  dump_json(j, args.out);
  std::cout << "lag: " << pairing.samples.size() << " samples, "
            << pairing.unmatched_sender << " unmatched sender onsets -> "
            << args.out << '\n';
}

// -- endpoints / topology ------------------------------------------------

json endpoint_to_json(const EndpointObservation& e) {
  return {{"addr", ipv4_to_string(e.addr)},
          {"port", e.port},
          {"transport", e.transport == Transport::udp ? "udp" : "tcp"},
          {"packet_count", e.packet_count},
          {"byte_count", e.byte_count},
          {"first_seen", e.first_seen},
          {"last_seen", e.last_seen},
          {"platform_class", to_string(e.platform_class)}};
}

void run_endpoints(const std::string& trace_path, const std::string& local,
                   std::uint64_t min_packets, const std::string& out) {
  const Trace trace = load_trace(trace_path, local);
  const auto endpoints = discover_endpoints(trace, min_packets);
  json j;
  j["schema_version"] = "vcbench-endpoints/1";
  j["generated_at_unix"] = now_unix();
  j["local_addr"] = ipv4_to_string(trace.local_addr);
  json list = json::array();
  for (const auto& e : endpoints) {
    json entry = endpoint_to_json(e);
    // SYN/SYN-ACK probe exchanges against this endpoint, when present
    try {
      const RttStats rtt = estimate_rtt(trace, e.addr, e.port);
      entry["rtt_mean_ms"] = rtt.mean * 1e3;
      entry["rtt_samples"] = rtt.samples.size();
    } catch (const NoProbes&) {
    }
    list.push_back(entry);
  }
  j["endpoints"] = list;
  dump_json(j, out);
  std::cout << "endpoints: " << endpoints.size() << " observations -> " << out
            << '\n';
}

void run_topology(const std::string& roster_path,
                  const std::vector<std::string>& trace_paths,
                  const std::string& out) {
  std::ifstream roster_in(roster_path);
  if (!roster_in) throw InputError("cannot open " + roster_path);
  std::vector<Ipv4> roster;
  std::string line;
  while (std::getline(roster_in, line)) {
    if (!line.empty()) roster.push_back(ipv4_from_string(line));
  }

  std::vector<std::pair<SessionMeta, Trace>> traces;
  for (const auto& path : trace_paths)
    traces.emplace_back(SessionMeta{}, parse_capture_file(path));
  const TopologyModel model = classify_topology(traces, roster);

  json j;
  j["schema_version"] = "vcbench-topology/1";
  j["generated_at_unix"] = now_unix();
  j["kind"] = to_string(model.kind);
  json map = json::object();
  for (const auto& [client, endpoint] : model.endpoint_map)
    map[ipv4_to_string(client)] = endpoint_to_json(endpoint);
  j["endpoint_map"] = map;
  dump_json(j, out);
  std::cout << "topology: " << to_string(model.kind) << " -> " << out << '\n';
}

// -- rate ----------------------------------------------------------------

void run_rate(const std::string& trace_path, const std::string& local,
              const std::string& direction, double bin, double warmup,
              const std::string& out, const std::string& summary_out) {
  const Trace trace = load_trace(trace_path, local);
  const Direction dir =
      direction == "up" ? Direction::outbound : Direction::inbound;
  const RateSeries series = payload_rate(trace, dir, bin);

  std::ofstream csv(out, std::ios::trunc);
  if (!csv) throw InputError("cannot write " + out);
  csv << "start_s,bps\n";
  char row[64];
  for (std::size_t i = 0; i < series.bps.size(); ++i) {
    std::snprintf(row, sizeof(row), "%.6f,%.3f\n", series.bin_start(i),
                  series.bps[i]);
    csv << row;
  }

  const RateSummary summary = rate_summary(series, warmup);
  if (!summary_out.empty()) {
    json j;
    j["schema_version"] = "vcbench-rate/1";
    j["generated_at_unix"] = now_unix();
    j["direction"] = direction;
    j["bin_width"] = bin;
    j["warmup"] = warmup;
    j["mean_bps"] = summary.mean_bps;
    j["stddev_bps"] = summary.stddev_bps;
    j["bins"] = summary.bins;
    dump_json(j, summary_out);
  }
  std::cout << "rate: mean " << summary.mean_bps / 1e3 << " kbps, stddev "
            << summary.stddev_bps / 1e3 << " kbps -> " << out << '\n';
}

// -- vqa -------------------------------------------------------------------

FrameSequence load_video(const std::string& path, const std::string& dims) {
  const bool is_y4m = path.size() >= 4 && path.substr(path.size() - 4) == ".y4m";
  if (is_y4m) return read_y4m(path);
  if (dims.empty()) return read_raw_y(path);  // sidecar-described
  int w = 0, h = 0;
  double fps = 30.0;
  if (std::sscanf(dims.c_str(), "%dx%d@%lf", &w, &h, &fps) < 2)
    throw InputError("dims must look like 640x480 or 640x480@30");
  return read_raw_y(path, w, h, fps);
}

struct VqaArgs {
  std::string ref, deg, out;
  std::string ref_dims, deg_dims;
  std::string crop, resize;
  bool auto_crop = false;
  std::string metrics = "psnr,ssim,msssim,vifp";
  int max_offset = 90;
  int stride = 5;
};

void run_vqa(const VqaArgs& args) {
  const FrameSequence ref = load_video(args.ref, args.ref_dims);
  FrameSequence deg = load_video(args.deg, args.deg_dims);
  if (ref.frames.empty() || deg.frames.empty())
    throw InputError("empty video input");

  // crop/resize the recording onto the reference geometry
  PreprocessSpec spec;
  spec.crop = {0, 0, deg.width(), deg.height()};
  bool have_crop = false;
  if (args.auto_crop) {
    spec.crop = detect_padding(deg);
    have_crop = true;
  }
  if (!args.crop.empty()) {
    if (std::sscanf(args.crop.c_str(), "%d,%d,%d,%d", &spec.crop.x, &spec.crop.y,
                    &spec.crop.w, &spec.crop.h) != 4)
      throw InputError("crop must look like x,y,w,h");
    have_crop = true;
  }
  spec.target_w = ref.width();
  spec.target_h = ref.height();
  if (!args.resize.empty()) {
    if (std::sscanf(args.resize.c_str(), "%dx%d", &spec.target_w,
                    &spec.target_h) != 2)
      throw InputError("resize must look like WxH");
  }
  const bool identity = !have_crop && spec.target_w == deg.width() &&
                        spec.target_h == deg.height();
  if (!identity) deg = preprocess(deg, spec);
  if (deg.width() != ref.width() || deg.height() != ref.height())
    throw DimensionMismatch("degraded video does not match the reference size");

  const int offset = align_temporal(ref, deg, args.max_offset, args.stride);

  // trim to the aligned overlap: ref[i] pairs with deg[i + offset]
  const auto n_ref = static_cast<long>(ref.frames.size());
  const auto n_deg = static_cast<long>(deg.frames.size());
  const long lo = std::max(0L, static_cast<long>(-offset));
  const long hi = std::min(n_ref, n_deg - offset);
  FrameSequence ref_cut, deg_cut;
  ref_cut.frame_rate = ref.frame_rate;
  deg_cut.frame_rate = deg.frame_rate;
  for (long i = lo; i < hi; ++i) {
    ref_cut.frames.push_back(ref.frames[static_cast<std::size_t>(i)]);
    deg_cut.frames.push_back(deg.frames[static_cast<std::size_t>(i + offset)]);
  }

  json j;
  j["schema_version"] = "vcbench-vqa/1";
  j["generated_at_unix"] = now_unix();
  j["offset_frames"] = offset;
  j["frames_scored"] = ref_cut.frames.size();
  if (have_crop || args.auto_crop)
    j["crop"] = {{"x", spec.crop.x},
                 {"y", spec.crop.y},
                 {"w", spec.crop.w},
                 {"h", spec.crop.h}};
  json metrics = json::object();
  std::stringstream names(args.metrics);
  std::string name;
  while (std::getline(names, name, ',')) {
    const VideoMetric metric = video_metric_from_string(name);
    const QualityScore score = sequence_score(ref_cut, deg_cut, metric);
    metrics[to_string(metric)] = {{"aggregate", score.aggregate},
                                  {"per_frame", score.per_frame}};
    std::cout << "vqa: " << to_string(metric) << " = " << score.aggregate
              << '\n';
  }
  j["metrics"] = metrics;
  dump_json(j, args.out);
}

// -- aqa -------------------------------------------------------------------

struct AqaArgs {
  std::string ref, deg, out_prefix, report;
  double target_lufs = -23.0;
  double max_offset = 10.0;
};

void run_aqa(const AqaArgs& args) {
  const AudioBuffer ref = read_wav(args.ref);
  const AudioBuffer deg = read_wav(args.deg);

  const LoudnessStats ref_in = integrated_loudness(ref);
  const LoudnessStats deg_in = integrated_loudness(deg);
  const NormalizeResult ref_norm = normalize_loudness(ref, args.target_lufs);
  const NormalizeResult deg_norm = normalize_loudness(deg, args.target_lufs);

  const double offset =
      find_offset(ref_norm.audio, deg_norm.audio, args.max_offset);
  const auto [ref_cut, deg_cut] =
      trim_align(ref_norm.audio, deg_norm.audio, offset);
  const ExportedPair files = export_pair(ref_cut, deg_cut, args.out_prefix);

  json j;
  j["schema_version"] = "vcbench-aqa/1";
  j["generated_at_unix"] = now_unix();
  j["ref_lufs"] = ref_in.integrated;
  j["deg_lufs"] = deg_in.integrated;
  j["target_lufs"] = args.target_lufs;
  j["gain_db_ref"] = 20.0 * std::log10(ref_norm.gain);
  j["gain_db_deg"] = 20.0 * std::log10(deg_norm.gain);
  j["clipped_ref"] = ref_norm.clipped;
  j["clipped_deg"] = deg_norm.clipped;
  j["offset_s"] = offset;
  j["aligned_duration_s"] = ref_cut.duration();
  j["files"] = {{"reference", files.reference_path.string()},
                {"degraded", files.degraded_path.string()}};
  // filled in by the external MOS-LQO scorer, 1 (worst) to 5 (best)
  j["mos_lqo"] = nullptr;
  dump_json(j, args.report);
  std::cout << "aqa: offset " << offset << " s, aligned "
            << ref_cut.duration() << " s -> " << args.report << '\n';
}

// -- simulate ---------------------------------------------------------------

void run_simulate(const std::string& config_path, const std::string& out_dir) {
  const SimConfig cfg = load_sim_config(config_path);
  const auto regional = load_regional_spec(config_path);
  if (regional) {
    const auto outputs =
        regional_lb_scenario(cfg, regional->groups, regional->sessions);
    json index;
    index["schema_version"] = "vcbench-sessions/1";
    json dirs = json::array();
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "session_%03zu", i);
      write_session(outputs[i], std::filesystem::path(out_dir) / name);
      dirs.push_back(name);
    }
    index["sessions"] = dirs;
    dump_json(index, (std::filesystem::path(out_dir) / "sessions.json").string());
    std::cout << "simulate: " << outputs.size() << " sessions -> " << out_dir
              << '\n';
  } else {
    const SimOutput output = simulate(cfg);
    write_session(output, out_dir);
    std::cout << "simulate: " << output.truth.flashes.size() << " flashes, "
              << output.truth.delivered << " delivered packets -> " << out_dir
              << '\n';
  }
}

// -- report -------------------------------------------------------------------

void run_report(const std::vector<std::string>& inputs,
                const std::string& group_by_csv, const std::string& out,
                const std::string& cdf_dir) {
  std::vector<SessionResult> sessions;
  for (const auto& path : inputs) sessions.push_back(load_session_result(path));

  std::vector<std::string> group_by;
  std::stringstream fields(group_by_csv);
  std::string field;
  while (std::getline(fields, field, ','))
    if (!field.empty()) group_by.push_back(field);

  const Report report = aggregate(sessions, group_by);
  write_report(report, out);
  if (!cdf_dir.empty()) write_group_cdfs(report, cdf_dir);
  std::cout << "report: " << sessions.size() << " sessions, "
            << report.groups.size() << " groups -> " << out << '\n';
}

void run_delta(const std::string& low_path, const std::string& high_path,
               const std::string& out) {
  const Report low = load_report(low_path);
  const Report high = load_report(high_path);
  const auto delta = qoe_delta(low, high);
  json j;
  j["schema_version"] = "vcbench-delta/1";
  j["generated_at_unix"] = now_unix();
  j["groups"] = delta;
  dump_json(j, out);
  std::cout << "delta: " << delta.size() << " groups -> " << out << '\n';
}

int run_main(int argc, char** argv) {
  CLI::App app{"videoconferencing QoE benchmark toolkit"};
  app.set_version_flag("--version", "vcbench 1.0.0");
  app.require_subcommand(1);

  LagArgs lag_args;
  auto* lag_cmd = app.add_subcommand("lag", "streaming lag from packet captures");
  lag_cmd->add_option("--sender", lag_args.sender, "sender-side capture")->required();
  lag_cmd->add_option("--receiver", lag_args.receiver, "receiver-side capture")->required();
  lag_cmd->add_option("--threshold", lag_args.cfg.size_threshold, "big-packet threshold, bytes");
  lag_cmd->add_option("--quiescence", lag_args.cfg.quiescence, "quiescent gap, seconds");
  lag_cmd->add_option("--period", lag_args.cfg.period_hint, "flash period, seconds");
  lag_cmd->add_option("--offset-receiver", lag_args.offset_receiver,
                      "clock offset added to receiver timestamps, seconds");
  lag_cmd->add_option("--sender-addr", lag_args.sender_addr, "sender local address override");
  lag_cmd->add_option("--receiver-addr", lag_args.receiver_addr, "receiver local address override");
  lag_cmd->add_option("--out", lag_args.out, "output JSON")->required();

  std::string ep_trace, ep_local, ep_out;
  std::uint64_t ep_min_packets = 50;
  auto* ep_cmd = app.add_subcommand("endpoints", "discover media service endpoints");
  ep_cmd->add_option("--trace", ep_trace, "capture file")->required();
  ep_cmd->add_option("--min-packets", ep_min_packets, "minimum packets per flow");
  ep_cmd->add_option("--local-addr", ep_local, "local address override");
  ep_cmd->add_option("--out", ep_out, "output JSON")->required();

  std::string topo_roster, topo_out;
  std::vector<std::string> topo_traces;
  auto* topo_cmd = app.add_subcommand("topology", "classify the relay architecture");
  topo_cmd->add_option("--roster", topo_roster, "file of client addresses, one per line")->required();
  topo_cmd->add_option("--traces", topo_traces, "one capture per client")->required()->expected(-2);
  topo_cmd->add_option("--out", topo_out, "output JSON")->required();

  std::string rate_trace, rate_local, rate_dir = "down", rate_out, rate_summary_out;
  double rate_bin = 1.0, rate_warmup = 5.0;
  auto* rate_cmd = app.add_subcommand("rate", "Layer-7 data-rate series");
  rate_cmd->add_option("--trace", rate_trace, "capture file")->required();
  rate_cmd->add_option("--direction", rate_dir, "up or down")
      ->check(CLI::IsMember({"up", "down"}));
  rate_cmd->add_option("--bin", rate_bin, "bin width, seconds");
  rate_cmd->add_option("--warmup", rate_warmup, "summary warmup discard, seconds");
  rate_cmd->add_option("--local-addr", rate_local, "local address override");
  rate_cmd->add_option("--out", rate_out, "output CSV (start_s, bps)")->required();
  rate_cmd->add_option("--summary", rate_summary_out, "optional summary JSON");

  VqaArgs vqa_args;
  auto* vqa_cmd = app.add_subcommand("vqa", "full-reference video quality");
  vqa_cmd->add_option("--ref", vqa_args.ref, "reference video (.y4m or raw Y)")->required();
  vqa_cmd->add_option("--deg", vqa_args.deg, "degraded video (.y4m or raw Y)")->required();
  vqa_cmd->add_option("--ref-dims", vqa_args.ref_dims, "raw reference dims WxH[@fps]");
  vqa_cmd->add_option("--deg-dims", vqa_args.deg_dims, "raw degraded dims WxH[@fps]");
  vqa_cmd->add_option("--crop", vqa_args.crop, "padding crop x,y,w,h on the recording");
  vqa_cmd->add_flag("--auto-crop", vqa_args.auto_crop, "detect uniform padding instead");
  vqa_cmd->add_option("--resize", vqa_args.resize, "resize target WxH (default: reference dims)");
  vqa_cmd->add_option("--metrics", vqa_args.metrics, "comma list of psnr,ssim,msssim,vifp");
  vqa_cmd->add_option("--max-offset", vqa_args.max_offset, "temporal search range, frames");
  vqa_cmd->add_option("--stride", vqa_args.stride, "alignment sampling stride, frames");
  vqa_cmd->add_option("--out", vqa_args.out, "output JSON")->required();

  AqaArgs aqa_args;
  auto* aqa_cmd = app.add_subcommand("aqa", "audio preprocessing for MOS-LQO scoring");
  aqa_cmd->add_option("--ref", aqa_args.ref, "reference WAV")->required();
  aqa_cmd->add_option("--deg", aqa_args.deg, "degraded WAV")->required();
  aqa_cmd->add_option("--target-lufs", aqa_args.target_lufs, "loudness target");
  aqa_cmd->add_option("--max-offset", aqa_args.max_offset, "offset search range, seconds");
  aqa_cmd->add_option("--out-prefix", aqa_args.out_prefix, "prefix for aligned WAV pair")->required();
  aqa_cmd->add_option("--report", aqa_args.report, "output JSON")->required();

  std::string sim_config, sim_out_dir;
  auto* sim_cmd = app.add_subcommand("simulate", "deterministic synthetic sessions");
  sim_cmd->add_option("--config", sim_config, "scenario JSON")->required();
  sim_cmd->add_option("--out-dir", sim_out_dir, "output directory")->required();

  std::vector<std::string> rep_inputs, rep_delta;
  std::string rep_group_by = "platform,n", rep_out, rep_cdf_dir;
  auto* rep_cmd = app.add_subcommand("report", "aggregate per-session results");
  rep_cmd->add_option("--inputs", rep_inputs, "session result JSON files")->expected(-1);
  rep_cmd->add_option("--group-by", rep_group_by, "comma list of platform,n,scenario");
  rep_cmd->add_option("--cdf-dir", rep_cdf_dir, "directory for per-group CDF CSVs");
  rep_cmd->add_option("--delta", rep_delta, "low-motion and high-motion report JSONs")
      ->expected(2);
  rep_cmd->add_option("--out", rep_out, "output JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (lag_cmd->parsed()) run_lag(lag_args);
    if (ep_cmd->parsed()) run_endpoints(ep_trace, ep_local, ep_min_packets, ep_out);
    if (topo_cmd->parsed()) run_topology(topo_roster, topo_traces, topo_out);
    if (rate_cmd->parsed())
      run_rate(rate_trace, rate_local, rate_dir, rate_bin, rate_warmup, rate_out,
               rate_summary_out);
    if (vqa_cmd->parsed()) run_vqa(vqa_args);
    if (aqa_cmd->parsed()) run_aqa(aqa_args);
    if (sim_cmd->parsed()) run_simulate(sim_config, sim_out_dir);
    if (rep_cmd->parsed()) {
      if (!rep_delta.empty()) {
        run_delta(rep_delta[0], rep_delta[1], rep_out);
      } else if (!rep_inputs.empty()) {
        run_report(rep_inputs, rep_group_by, rep_out, rep_cdf_dir);
      } else {
        throw InputError("report needs --inputs or --delta");
      }
    }
  } catch (const AnalysisError& e) {
    std::cerr << "analysis error: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
