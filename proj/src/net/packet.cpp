#include "vcbench/packet.hpp"

#include <algorithm>
#include <charconv>

#include "vcbench/errors.hpp"

namespace vcbench {

Ipv4 ipv4_from_string(const std::string& dotted) {
  Ipv4 addr = 0;
  const char* p = dotted.data();
  const char* end = p + dotted.size();
  for (int i = 0; i < 4; ++i) {
    unsigned octet = 0;
    auto [next, ec] = std::from_chars(p, end, octet);
    if (ec != std::errc{} || octet > 255 || next == p)
      throw InputError("invalid IPv4 address: " + dotted);
    addr = (addr << 8) | octet;
    p = next;
    if (i < 3) {
      if (p == end || *p != '.') throw InputError("invalid IPv4 address: " + dotted);
      ++p;
    }
  }
  if (p != end) throw InputError("invalid IPv4 address: " + dotted);
  return addr;
}

std::string ipv4_to_string(Ipv4 addr) {
  std::string out;
  out.reserve(15);
  for (int shift = 24; shift >= 0; shift -= 8) {
    out += std::to_string((addr >> shift) & 0xff);
    if (shift) out += '.';
  }
  return out;
}

Trace rebase_clock(const Trace& trace, double offset) {
  Trace out = trace;
  out.capture_start += offset;
  for (auto& rec : out.records) rec.timestamp += offset;
  return out;
}

bool FlowPattern::matches(const PacketRecord& rec) const {
  if (impossible) return false;
  if (remote_addr && rec.remote_addr() != *remote_addr) return false;
  if (remote_port && rec.remote_port() != *remote_port) return false;
  if (transport && rec.transport != *transport) return false;
  if (direction && rec.direction != *direction) return false;
  return true;
}

FlowPattern FlowPattern::operator&(const FlowPattern& other) const {
  FlowPattern out = *this;
  out.impossible = impossible || other.impossible;
  auto merge = [&out](auto& mine, const auto& theirs) {
    if (!theirs) return;
    if (mine && *mine != *theirs) out.impossible = true;
    mine = theirs;
  };
  merge(out.remote_addr, other.remote_addr);
  merge(out.remote_port, other.remote_port);
  merge(out.transport, other.transport);
  merge(out.direction, other.direction);
  return out;
}

Trace filter_flow(const Trace& trace, const FlowPattern& pattern) {
  return filter_flow(
      trace, [&pattern](const PacketRecord& rec) { return pattern.matches(rec); });
}

Trace filter_flow(const Trace& trace,
                  const std::function<bool(const PacketRecord&)>& pred) {
  Trace out;
  out.local_addr = trace.local_addr;
  out.capture_start = trace.capture_start;
  out.link_type = trace.link_type;
  out.skipped_count = trace.skipped_count;
  std::copy_if(trace.records.begin(), trace.records.end(),
               std::back_inserter(out.records), pred);
  return out;
}

}  // namespace vcbench
