#include "vcbench/endpoints.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "vcbench/errors.hpp"

namespace vcbench {

std::string to_string(PlatformClass c) {
  switch (c) {
    case PlatformClass::zoom_media: return "zoom-media";
    case PlatformClass::webex_media: return "webex-media";
    case PlatformClass::meet_media: return "meet-media";
    case PlatformClass::p2p_ephemeral: return "p2p-ephemeral";
    case PlatformClass::unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(TopologyKind k) {
  switch (k) {
    case TopologyKind::shared_relay: return "shared-relay";
    case TopologyKind::per_client_relay: return "per-client-relay";
    case TopologyKind::peer_to_peer: return "peer-to-peer";
  }
  return "shared-relay";
}

namespace {

PlatformClass classify_port(Transport transport, std::uint16_t port) {
  if (transport != Transport::udp) return PlatformClass::unknown;
  switch (port) {
    case 8801: return PlatformClass::zoom_media;
    case 9000: return PlatformClass::webex_media;
    case 19305: return PlatformClass::meet_media;
    default: return PlatformClass::unknown;
  }
}

}  // namespace

std::vector<EndpointObservation> discover_endpoints(const Trace& trace,
                                                    std::uint64_t min_packets) {
  std::map<std::tuple<Ipv4, std::uint16_t, Transport>, EndpointObservation> groups;
  for (const auto& rec : trace.records) {
    const auto key = std::make_tuple(rec.remote_addr(), rec.remote_port(),
                                     rec.transport);
    auto [it, inserted] = groups.try_emplace(key);
    EndpointObservation& obs = it->second;
    if (inserted) {
      obs.addr = rec.remote_addr();
      obs.port = rec.remote_port();
      obs.transport = rec.transport;
      obs.first_seen = rec.timestamp;
      obs.last_seen = rec.timestamp;
      obs.platform_class = classify_port(rec.transport, obs.port);
    }
    ++obs.packet_count;
    obs.byte_count += rec.payload_len;
    obs.first_seen = std::min(obs.first_seen, rec.timestamp);
    obs.last_seen = std::max(obs.last_seen, rec.timestamp);
  }

  std::vector<EndpointObservation> out;
  for (const auto& [key, obs] : groups)
    if (obs.packet_count >= min_packets) out.push_back(obs);
  std::sort(out.begin(), out.end(),
            [](const EndpointObservation& a, const EndpointObservation& b) {
              return std::tuple(b.byte_count, b.packet_count, a.addr, a.port,
                                a.transport) <
                     std::tuple(a.byte_count, a.packet_count, b.addr, b.port,
                                b.transport);
            });
  return out;
}

TopologyModel classify_topology(
    const std::vector<std::pair<SessionMeta, Trace>>& session_traces,
    const std::vector<Ipv4>& roster) {
  if (session_traces.size() < 2)
    throw InputError("topology classification needs at least 2 traces");

  const std::set<Ipv4> roster_set(roster.begin(), roster.end());
  TopologyModel model;

  for (const auto& [meta, trace] : session_traces) {
    auto endpoints = discover_endpoints(trace, 1);
    if (endpoints.empty())
      throw AmbiguousTopology("trace for " + ipv4_to_string(trace.local_addr) +
                              " has no flows");
    EndpointObservation dominant = endpoints.front();  // sort puts it first
    if (roster_set.contains(dominant.addr) && dominant.port >= 49152 &&
        dominant.platform_class == PlatformClass::unknown)
      dominant.platform_class = PlatformClass::p2p_ephemeral;
    model.endpoint_map[trace.local_addr] = dominant;
  }

  std::set<std::tuple<Ipv4, std::uint16_t, Transport>> distinct;
  bool all_in_roster = true;
  bool none_in_roster = true;
  for (const auto& [client, obs] : model.endpoint_map) {
    distinct.insert({obs.addr, obs.port, obs.transport});
    const bool is_peer = roster_set.contains(obs.addr) && obs.addr != client;
    all_in_roster = all_in_roster && is_peer;
    none_in_roster = none_in_roster && !roster_set.contains(obs.addr);
  }

  if (distinct.size() == 1 && none_in_roster) {
    model.kind = TopologyKind::shared_relay;
  } else if (all_in_roster) {
    model.kind = TopologyKind::peer_to_peer;
  } else if (distinct.size() >= 2 && none_in_roster) {
    model.kind = TopologyKind::per_client_relay;
  } else {
    throw AmbiguousTopology("dominant endpoints match no relay pattern");
  }
  return model;
}

ChurnStats endpoint_churn(
    const std::vector<std::vector<EndpointObservation>>& sessions) {
  ChurnStats stats;
  std::set<Ipv4> seen;
  for (const auto& session : sessions) {
    std::uint64_t fresh = 0;
    for (const auto& obs : session)
      if (seen.insert(obs.addr).second) ++fresh;
    stats.first_appearances.push_back(fresh);
  }
  stats.distinct_total = seen.size();
  stats.mean_new_per_session =
      sessions.empty() ? 0.0
                       : static_cast<double>(stats.distinct_total) /
                             static_cast<double>(sessions.size());
  return stats;
}

RttStats estimate_rtt(const Trace& trace, Ipv4 endpoint_addr,
                      std::uint16_t endpoint_port) {
  RttStats stats;
  stats.endpoint_addr = endpoint_addr;
  stats.endpoint_port = endpoint_port;

  // (local port, seq) -> SYN send time; first SYN wins, retransmits ignored
  std::map<std::pair<std::uint16_t, std::uint32_t>, double> pending;
  for (const auto& rec : trace.records) {
    if (rec.transport != Transport::tcp) continue;
    const bool syn = rec.tcp_flags & tcp_flags::syn;
    const bool ack = rec.tcp_flags & tcp_flags::ack;
    if (rec.direction == Direction::outbound && syn && !ack &&
        rec.dst_addr == endpoint_addr && rec.dst_port == endpoint_port) {
      pending.try_emplace({rec.src_port, rec.tcp_seq}, rec.timestamp);
    } else if (rec.direction == Direction::inbound && syn && ack &&
               rec.src_addr == endpoint_addr && rec.src_port == endpoint_port) {
      const auto it = pending.find({rec.dst_port, rec.tcp_ack - 1});
      if (it != pending.end()) {
        stats.samples.push_back(rec.timestamp - it->second);
        pending.erase(it);
      }
    }
  }
  if (stats.samples.empty())
    throw NoProbes("no SYN/SYN-ACK pairs toward " +
                   ipv4_to_string(endpoint_addr) + ":" +
                   std::to_string(endpoint_port));

  double sum = 0.0;
  for (double s : stats.samples) sum += s;
  stats.mean = sum / static_cast<double>(stats.samples.size());
  return stats;
}

}  // namespace vcbench
