#include "vcbench/pcap.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

#include "vcbench/errors.hpp"

namespace vcbench {
namespace {

constexpr std::uint32_t kMagicUsec = 0xa1b2c3d4;
constexpr std::uint32_t kMagicUsecSwapped = 0xd4c3b2a1;
constexpr std::uint32_t kMagicNsec = 0xa1b23c4d;
constexpr std::uint32_t kMagicNsecSwapped = 0x4d3cb2a1;
constexpr std::uint32_t kLinkEthernet = 1;
constexpr std::uint32_t kLinkRawIpv4 = 101;

struct Reader {
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;
  bool swapped = false;

  std::size_t remaining() const { return data.size() - pos; }

  std::uint32_t u32() {
    std::uint32_t v;
    std::memcpy(&v, data.data() + pos, 4);
    pos += 4;
    return swapped ? __builtin_bswap32(v) : v;
  }
  std::uint16_t u16() {
    std::uint16_t v;
    std::memcpy(&v, data.data() + pos, 2);
    pos += 2;
    return swapped ? __builtin_bswap16(v) : v;
  }
};

inline std::uint16_t be16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}
inline std::uint32_t be32(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) |
         (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | p[3];
}

// Decoded packet before direction assignment.
struct RawRecord {
  double timestamp;
  Transport transport;
  Ipv4 src_addr, dst_addr;
  std::uint16_t src_port, dst_port;
  std::uint32_t payload_len, wire_len;
  std::uint8_t tcp_flags;
  std::uint32_t tcp_seq, tcp_ack;
};

struct Decoded {
  std::uint32_t link_type = kLinkEthernet;
  std::vector<RawRecord> records;
  std::uint64_t skipped = 0;
};

Decoded decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 24) throw MalformedHeader("capture shorter than global header");

  Reader rd{bytes};
  std::uint32_t magic;
  std::memcpy(&magic, bytes.data(), 4);
  rd.pos = 4;
  if (magic == kMagicUsec) {
    rd.swapped = false;
  } else if (magic == kMagicUsecSwapped) {
    rd.swapped = true;
  } else if (magic == kMagicNsec || magic == kMagicNsecSwapped) {
    throw UnsupportedLinkType("nanosecond-resolution captures are not supported");
  } else {
    throw MalformedHeader("unrecognized capture magic");
  }

  const std::uint16_t version_major = rd.u16();
  rd.u16();             // version_minor
  rd.u32();             // thiszone
  rd.u32();             // sigfigs
  rd.u32();             // snaplen
  const std::uint32_t link_type = rd.u32();
  if (version_major != 2) throw MalformedHeader("unsupported capture version");
  if (link_type != kLinkEthernet && link_type != kLinkRawIpv4)
    throw UnsupportedLinkType("link type " + std::to_string(link_type));

  Decoded out;
  out.link_type = link_type;

  while (rd.remaining() > 0) {
    if (rd.remaining() < 16) throw TruncatedRecord("truncated record header");
    const std::uint32_t ts_sec = rd.u32();
    const std::uint32_t ts_usec = rd.u32();
    const std::uint32_t incl_len = rd.u32();
    const std::uint32_t orig_len = rd.u32();
    if (incl_len > rd.remaining())
      throw TruncatedRecord("record claims more bytes than remain");

    const std::uint8_t* frame = bytes.data() + rd.pos;
    rd.pos += incl_len;

    std::size_t ip_off = 0;
    if (link_type == kLinkEthernet) {
      if (incl_len < 14 || be16(frame + 12) != 0x0800) {
        ++out.skipped;
        continue;
      }
      ip_off = 14;
    }
    const std::uint8_t* ip = frame + ip_off;
    const std::size_t ip_avail = incl_len - ip_off;
    if (ip_avail < 20 || (ip[0] >> 4) != 4) {
      ++out.skipped;
      continue;
    }
    const std::size_t ihl = static_cast<std::size_t>(ip[0] & 0x0f) * 4;
    const std::uint16_t total_len = be16(ip + 2);
    const std::uint16_t frag = be16(ip + 6);
    const std::uint8_t proto = ip[9];
    if (ihl < 20 || ip_avail < ihl || (frag & 0x1fff) != 0) {
      ++out.skipped;  // options truncated or trailing fragment
      continue;
    }
    if (proto != 6 && proto != 17) {
      ++out.skipped;
      continue;
    }

    const std::uint8_t* tp = ip + ihl;
    const std::size_t tp_avail = ip_avail - ihl;
    RawRecord rec{};
    rec.timestamp =
        static_cast<double>(ts_sec * 1000000ull + ts_usec) / 1e6;
    rec.src_addr = be32(ip + 12);
    rec.dst_addr = be32(ip + 16);
    rec.wire_len = orig_len;

    std::size_t tp_hdr;
    if (proto == 17) {
      if (tp_avail < 8) {
        ++out.skipped;
        continue;
      }
      rec.transport = Transport::udp;
      tp_hdr = 8;
    } else {
      if (tp_avail < 14) {  // through the flags byte
        ++out.skipped;
        continue;
      }
      rec.transport = Transport::tcp;
      rec.tcp_seq = be32(tp + 4);
      rec.tcp_ack = be32(tp + 8);
      rec.tcp_flags = tp[13];
      tp_hdr = static_cast<std::size_t>(tp[12] >> 4) * 4;
      if (tp_hdr < 20) {
        ++out.skipped;
        continue;
      }
    }
    rec.src_port = be16(tp);
    rec.dst_port = be16(tp + 2);
    if (total_len < ihl + tp_hdr) {
      ++out.skipped;
      continue;
    }
    rec.payload_len = static_cast<std::uint32_t>(total_len - ihl - tp_hdr);
    if (rec.payload_len > rec.wire_len) rec.payload_len = rec.wire_len;
    out.records.push_back(rec);
  }
  return out;
}

Ipv4 infer_local(const std::vector<RawRecord>& records) {
  std::map<Ipv4, std::uint64_t> counts;
  for (const auto& rec : records) {
    ++counts[rec.src_addr];
    if (rec.dst_addr != rec.src_addr) ++counts[rec.dst_addr];
  }
  Ipv4 best = 0;
  std::uint64_t best_count = 0;
  for (const auto& [addr, count] : counts) {
    if (count > best_count) {  // map order gives lowest-addr tiebreak
      best = addr;
      best_count = count;
    }
  }
  return best;
}

Trace finalize(Decoded&& dec, Ipv4 local) {
  Trace trace;
  trace.local_addr = local;
  trace.link_type = dec.link_type;
  trace.skipped_count = dec.skipped;
  trace.records.reserve(dec.records.size());
  for (const auto& raw : dec.records) {
    PacketRecord rec;
    rec.timestamp = raw.timestamp;
    rec.transport = raw.transport;
    rec.src_addr = raw.src_addr;
    rec.dst_addr = raw.dst_addr;
    rec.src_port = raw.src_port;
    rec.dst_port = raw.dst_port;
    rec.payload_len = raw.payload_len;
    rec.wire_len = raw.wire_len;
    rec.tcp_flags = raw.tcp_flags;
    rec.tcp_seq = raw.tcp_seq;
    rec.tcp_ack = raw.tcp_ack;
    if (raw.src_addr == local) {
      rec.direction = Direction::outbound;
    } else if (raw.dst_addr == local) {
      rec.direction = Direction::inbound;
    } else {
      ++trace.skipped_count;  // foreign packet, neither side is local
      continue;
    }
    trace.records.push_back(rec);
  }
  std::stable_sort(trace.records.begin(), trace.records.end(),
                   [](const PacketRecord& a, const PacketRecord& b) {
                     return a.timestamp < b.timestamp;
                   });
  trace.capture_start =
      trace.records.empty() ? 0.0 : trace.records.front().timestamp;
  return trace;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

struct Writer {
  std::vector<std::uint8_t> out;

  void u8(std::uint8_t v) { out.push_back(v); }
  void u16le(std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void u32le(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u16be(std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
  }
  void u32be(std::uint32_t v) {
    for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void zeros(std::size_t n) { out.insert(out.end(), n, 0); }
};

}  // namespace

Trace parse_capture(std::span<const std::uint8_t> file_bytes) {
  Decoded dec = decode(file_bytes);
  const Ipv4 local = infer_local(dec.records);
  return finalize(std::move(dec), local);
}

Trace parse_capture(std::span<const std::uint8_t> file_bytes, Ipv4 local_addr) {
  return finalize(decode(file_bytes), local_addr);
}

Trace parse_capture_file(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_capture(bytes);
}

Trace parse_capture_file(const std::filesystem::path& path, Ipv4 local_addr) {
  const auto bytes = read_file(path);
  return parse_capture(bytes, local_addr);
}

std::vector<std::uint8_t> write_capture(const Trace& trace) {
  Writer wr;
  wr.u32le(kMagicUsec);
  wr.u16le(2);      // version 2.4
  wr.u16le(4);
  wr.u32le(0);      // thiszone
  wr.u32le(0);      // sigfigs
  wr.u32le(65535);  // snaplen
  wr.u32le(kLinkEthernet);

  for (const auto& rec : trace.records) {
    const std::uint32_t tp_hdr = rec.transport == Transport::udp ? 8u : 20u;
    const std::uint32_t incl = 14 + 20 + tp_hdr;
    const std::uint32_t ip_total = 20 + tp_hdr + rec.payload_len;

    if (rec.timestamp < 0.0)
      throw InputError("capture timestamps must be non-negative");
    const auto us = static_cast<std::uint64_t>(std::llround(rec.timestamp * 1e6));
    wr.u32le(static_cast<std::uint32_t>(us / 1000000));
    wr.u32le(static_cast<std::uint32_t>(us % 1000000));
    wr.u32le(incl);
    wr.u32le(std::max(rec.wire_len, incl));

    // Ethernet: zero MACs, IPv4 ethertype
    wr.zeros(12);
    wr.u16be(0x0800);
    // IPv4, no options, DF set, checksum left zero
    wr.u8(0x45);
    wr.u8(0);
    wr.u16be(static_cast<std::uint16_t>(ip_total));
    wr.u16be(0);
    wr.u16be(0x4000);
    wr.u8(64);
    wr.u8(rec.transport == Transport::udp ? 17 : 6);
    wr.u16be(0);
    wr.u32be(rec.src_addr);
    wr.u32be(rec.dst_addr);
    wr.u16be(rec.src_port);
    wr.u16be(rec.dst_port);
    if (rec.transport == Transport::udp) {
      wr.u16be(static_cast<std::uint16_t>(8 + rec.payload_len));
      wr.u16be(0);
    } else {
      wr.u32be(rec.tcp_seq);
      wr.u32be(rec.tcp_ack);
      wr.u8(0x50);  // data offset 5 words
      wr.u8(rec.tcp_flags);
      wr.u16be(65535);  // window
      wr.u16be(0);      // checksum
      wr.u16be(0);      // urgent
    }
  }
  return wr.out;
}

void write_capture_file(const Trace& trace, const std::filesystem::path& path) {
  const auto bytes = write_capture(trace);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace vcbench
