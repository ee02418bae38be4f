#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vcbench/packet.hpp"

namespace vcbench {

enum class PlatformClass : std::uint8_t {
  zoom_media,    // UDP/8801
  webex_media,   // UDP/9000
  meet_media,    // UDP/19305
  p2p_ephemeral,
  unknown,
};

std::string to_string(PlatformClass c);

struct EndpointObservation {
  Ipv4 addr = 0;
  std::uint16_t port = 0;
  Transport transport = Transport::udp;
  std::uint64_t packet_count = 0;
  std::uint64_t byte_count = 0;  // L7 payload bytes
  double first_seen = 0.0;
  double last_seen = 0.0;
  PlatformClass platform_class = PlatformClass::unknown;
};

// Groups records by (remote addr, remote port, transport) and keeps groups
// with at least min_packets packets. Output sorted by byte_count descending,
// ties by packet_count then lowest addr/port.
std::vector<EndpointObservation> discover_endpoints(const Trace& trace,
                                                    std::uint64_t min_packets = 50);

enum class TopologyKind : std::uint8_t {
  shared_relay,
  per_client_relay,
  peer_to_peer,
};

std::string to_string(TopologyKind k);
TopologyKind topology_kind_from_string(const std::string& name);

struct TopologyModel {
  TopologyKind kind = TopologyKind::shared_relay;
  std::map<Ipv4, EndpointObservation> endpoint_map;  // client -> dominant endpoint
};

// Classifies the relay architecture from one trace per client. Dominant
// flow per client = the endpoint group with the largest byte_count, ties
// by packet_count then lowest addr. Throws AmbiguousTopology when the
// dominant endpoints match none of the three patterns.
TopologyModel classify_topology(
    const std::vector<std::pair<SessionMeta, Trace>>& session_traces,
    const std::vector<Ipv4>& roster);

struct ChurnStats {
  std::uint64_t distinct_total = 0;              // |union of endpoint addrs|
  std::vector<std::uint64_t> first_appearances;  // new addrs per session
  double mean_new_per_session = 0.0;
};

// Sessions must be in chronological order; distinct_total is order-invariant.
ChurnStats endpoint_churn(
    const std::vector<std::vector<EndpointObservation>>& sessions);

struct RttStats {
  Ipv4 endpoint_addr = 0;
  std::uint16_t endpoint_port = 0;
  std::vector<double> samples;  // seconds
  double mean = 0.0;
};

// One sample per SYN -> SYN-ACK pair against the endpoint, matched by
// reversed 4-tuple and ack = syn.seq + 1 (tcpping-style probing). Throws
// NoProbes when no pair is found.
RttStats estimate_rtt(const Trace& trace, Ipv4 endpoint_addr,
                      std::uint16_t endpoint_port);

}  // namespace vcbench
