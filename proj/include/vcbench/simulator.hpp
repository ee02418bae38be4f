#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include "vcbench/endpoints.hpp"
#include "vcbench/packet.hpp"

namespace vcbench {

struct FlashBurstSpec {
  int packet_count = 30;
  std::uint32_t payload_len = 1000;  // per packet, > onset threshold
  double intra_gap = 0.001;          // seconds between burst packets
};

struct BackgroundSpec {
  std::uint32_t payload_len = 120;  // stays under the onset threshold
  double rate_pps = 200.0;
};

struct SimClient {
  Ipv4 addr = 0;
  Role role = Role::participant;
  double clock_offset = 0.0;  // injected capture-clock misalignment
};

// Deterministic synthetic session: a meeting host broadcasting a periodic
// flash-signal feed (and optionally a constant-rate stream) to passive
// participants over one of the three relay architectures, with per-link
// delay, token-bucket capping, jitter and i.i.d. loss.
struct SimConfig {
  std::uint64_t seed = 1;
  double duration = 120.0;
  TopologyKind topology = TopologyKind::shared_relay;
  std::vector<SimClient> clients;  // exactly one host

  Ipv4 shared_relay = 0;                 // shared-relay topologies
  std::map<Ipv4, Ipv4> relay_assignment; // per-client-relay: client -> relay

  double default_delay = 0.0;                  // seconds, one-way
  std::map<std::pair<Ipv4, Ipv4>, double> path_delays;  // directed overrides

  double flash_period = 2.0;
  FlashBurstSpec flash_burst;
  BackgroundSpec background;

  double offered_rate = 0.0;       // bps of constant-rate media, 0 = off
  std::uint32_t cbr_payload = 1000;

  double cap = 0.0;     // bps token bucket per link (burst = cap * 0.1 s), 0 = off
  double jitter = 0.0;  // uniform +/- seconds per hop
  double loss = 0.0;    // i.i.d. drop probability per hop

  std::uint16_t media_port = 8801;  // 0 = ephemeral (forced for peer-to-peer)
  double start_epoch = 1.6e9;       // absolute capture epoch, seconds

  int rtt_probe_count = 0;          // SYN/SYN-ACK probes per client
  double rtt_probe_interval = 0.2;

  // Keepalive chatter to a separate signaling server; keeps each capture's
  // local address unambiguous for inference.
  Ipv4 signaling_addr = 0xCB007135;  // 203.0.113.53
  double signaling_interval = 0.5;
};

struct FlashTruth {
  double send_time = 0.0;             // first burst packet leaves the host
  std::map<Ipv4, double> arrivals;    // first delivered burst packet; absent = lost
};

struct GroundTruth {
  TopologyKind topology = TopologyKind::shared_relay;
  double start_epoch = 0.0;
  double duration = 0.0;
  std::uint16_t media_port = 0;
  std::vector<FlashTruth> flashes;
  std::map<Ipv4, double> delivered_rate_bps;  // inbound media L7 rate per client
  std::map<Ipv4, double> clock_offsets;
  // link-level packet conservation: delivered + dropped = emitted
  std::uint64_t emitted = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
};

struct SimOutput {
  std::vector<SimClient> clients;
  std::map<Ipv4, Trace> traces;  // one capture per client
  GroundTruth truth;
};

// Throws ConfigInvalid on inconsistent configs. Identical configs produce
// identical output, byte-for-byte once written.
SimOutput simulate(const SimConfig& config);

// Writes per-client captures plus ground_truth.json into dir.
// Capture files are named "<role>_<addr>.pcap".
void write_session(const SimOutput& output, const std::filesystem::path& dir);

struct RelayGroup {
  Ipv4 addr = 0;
  double delay = 0.0;  // one-way host->relay delay for this group
};

// Regional load-balancing scenario: `sessions` copies of the base config,
// each pinned to one relay group chosen uniformly by the seeded RNG. The
// pooled lag distribution steps at the configured group delays.
std::vector<SimOutput> regional_lb_scenario(const SimConfig& base,
                                            const std::vector<RelayGroup>& groups,
                                            int sessions);

// Scenario JSON (field names mirror SimConfig; see README for the schema).
SimConfig load_sim_config(const std::filesystem::path& path);
struct RegionalSpec {
  std::vector<RelayGroup> groups;
  int sessions = 0;
};
std::optional<RegionalSpec> load_regional_spec(const std::filesystem::path& path);

void write_ground_truth(const SimOutput& output, const std::filesystem::path& file);

}  // namespace vcbench
