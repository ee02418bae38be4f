#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "vcbench/packet.hpp"

namespace vcbench {

// Classic (microsecond) capture file decoding. Accepts magic 0xa1b2c3d4 in
// either byte order; link types 1 (Ethernet) and 101 (raw IPv4). IPv6,
// non-UDP/TCP protocols and trailing IP fragments are skipped and counted.
//
// local_addr: when not given it is inferred as the address appearing in the
// most records (ties to the lowest address); records touching neither side
// of the local address are skipped.
Trace parse_capture(std::span<const std::uint8_t> file_bytes);
Trace parse_capture(std::span<const std::uint8_t> file_bytes, Ipv4 local_addr);
Trace parse_capture_file(const std::filesystem::path& path);
Trace parse_capture_file(const std::filesystem::path& path, Ipv4 local_addr);

// Writes records back as link-type-1 frames with synthesized Ethernet/IP/
// transport headers. Payload bytes are not stored: incl_len covers headers
// only while orig_len keeps the true wire length, which parse_capture
// decodes losslessly (lengths come from the header fields).
std::vector<std::uint8_t> write_capture(const Trace& trace);
void write_capture_file(const Trace& trace, const std::filesystem::path& path);

}  // namespace vcbench
