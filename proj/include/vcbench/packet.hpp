#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vcbench {

// IPv4 address in host byte order.
using Ipv4 = std::uint32_t;

Ipv4 ipv4_from_string(const std::string& dotted);  // throws InputError
std::string ipv4_to_string(Ipv4 addr);

enum class Direction : std::uint8_t { inbound, outbound };
enum class Transport : std::uint8_t { udp, tcp };

namespace tcp_flags {
inline constexpr std::uint8_t fin = 0x01;
inline constexpr std::uint8_t syn = 0x02;
inline constexpr std::uint8_t rst = 0x04;
inline constexpr std::uint8_t psh = 0x08;
inline constexpr std::uint8_t ack = 0x10;
}  // namespace tcp_flags

// One transport packet as seen at the monitored client. payload_len is
// Layer-7 bytes (transport payload, headers excluded), derived from the
// IP/transport length fields so snap-truncated captures decode fully.
struct PacketRecord {
  double timestamp = 0.0;  // seconds since epoch, microsecond resolution
  Direction direction = Direction::inbound;
  Transport transport = Transport::udp;
  Ipv4 src_addr = 0;
  Ipv4 dst_addr = 0;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  std::uint32_t payload_len = 0;
  std::uint32_t wire_len = 0;
  // TCP-only extras, zero for UDP; needed for SYN/SYN-ACK RTT probes.
  std::uint8_t tcp_flags = 0;
  std::uint32_t tcp_seq = 0;
  std::uint32_t tcp_ack = 0;

  Ipv4 remote_addr() const {
    return direction == Direction::outbound ? dst_addr : src_addr;
  }
  std::uint16_t remote_port() const {
    return direction == Direction::outbound ? dst_port : src_port;
  }

  bool operator==(const PacketRecord&) const = default;
};

struct Trace {
  Ipv4 local_addr = 0;
  double capture_start = 0.0;
  std::uint32_t link_type = 1;
  std::vector<PacketRecord> records;
  std::uint64_t skipped_count = 0;  // non-IPv4, non-UDP/TCP, fragments, foreign
};

enum class PlatformHint : std::uint8_t { zoom, webex, meet, unknown };
enum class Role : std::uint8_t { host, participant };

struct SessionMeta {
  std::string session_id;
  PlatformHint platform_hint = PlatformHint::unknown;
  Role role = Role::participant;
  int participant_count = 1;  // N >= 1
  double clock_offset = 0.0;  // applied to rebase onto the common timeline
};

// Shifts all timestamps (and capture_start) by offset; ordering preserved.
Trace rebase_clock(const Trace& trace, double offset);

// Flow predicate over the remote side of each record. Unset fields match
// anything; `impossible` marks a conjunction with conflicting constraints.
struct FlowPattern {
  std::optional<Ipv4> remote_addr;
  std::optional<std::uint16_t> remote_port;
  std::optional<Transport> transport;
  std::optional<Direction> direction;
  bool impossible = false;

  bool matches(const PacketRecord& rec) const;
  FlowPattern operator&(const FlowPattern& other) const;
};

Trace filter_flow(const Trace& trace, const FlowPattern& pattern);
Trace filter_flow(const Trace& trace,
                  const std::function<bool(const PacketRecord&)>& pred);

}  // namespace vcbench
