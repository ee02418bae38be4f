#include "vcbench/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "vcbench/errors.hpp"
#include "vcbench/pcap.hpp"

namespace vcbench {
namespace {

using json = nlohmann::json;

enum class UnitKind : std::uint8_t {
  flash,
  cbr,
  background,
  probe,
  probe_reply,
  signaling,
  signaling_reply,
};

constexpr bool is_media(UnitKind k) {
  return k == UnitKind::flash || k == UnitKind::cbr;
}
constexpr bool is_lossy(UnitKind k) {
  return is_media(k) || k == UnitKind::background;
}

// One link-level transmission.
struct Unit {
  Ipv4 from = 0, to = 0;
  Ipv4 src_addr = 0, dst_addr = 0;
  std::uint16_t src_port = 0, dst_port = 0;
  Transport transport = Transport::udp;
  std::uint8_t flags = 0;
  std::uint32_t seq = 0, ack = 0;
  std::uint32_t payload = 0;
  UnitKind kind = UnitKind::background;
  int flash_id = -1;
  Ipv4 media_dest = 0;  // per-client-relay: the client this copy serves
};

struct Event {
  double t = 0.0;
  std::uint64_t order = 0;
  bool arrival = false;  // false: send at t, true: arrive at t
  Unit unit;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.t != b.t) return a.t > b.t;
    return a.order > b.order;
  }
};

struct TokenBucket {
  double rate = 0.0;
  double capacity = 0.0;
  double tokens = 0.0;
  double last = 0.0;

  // returns the departure time of a packet of `bits` arriving at t
  double admit(double t, double bits) {
    tokens = std::min(capacity, tokens + (t - last) * rate);
    last = t;
    if (tokens >= bits) {
      tokens -= bits;
      return t;
    }
    const double wait = (bits - tokens) / rate;
    tokens = 0.0;
    last = t + wait;
    return t + wait;
  }
};

double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint32_t wire_overhead(Transport t) {
  return t == Transport::udp ? 42u : 54u;  // eth + ip + udp/tcp
}

struct Engine {
  const SimConfig& cfg;
  std::mt19937_64 rng;
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue;
  std::uint64_t next_order = 0;

  Ipv4 host = 0;
  std::vector<Ipv4> participants;  // every client except the host
  std::map<Ipv4, std::uint16_t> local_port;
  std::map<Ipv4, double> clock_offset;
  std::set<Ipv4> captured;
  std::map<Ipv4, std::vector<PacketRecord>> records;
  std::map<std::pair<Ipv4, Ipv4>, TokenBucket> buckets;

  GroundTruth truth;
  std::map<Ipv4, std::uint64_t> media_bytes;

  explicit Engine(const SimConfig& c) : cfg(c), rng(c.seed) {}

  double delay(Ipv4 from, Ipv4 to) const {
    const auto it = cfg.path_delays.find({from, to});
    return it != cfg.path_delays.end() ? it->second : cfg.default_delay;
  }

  Ipv4 relay_of(Ipv4 client) const {
    if (cfg.topology == TopologyKind::shared_relay) return cfg.shared_relay;
    return cfg.relay_assignment.at(client);
  }

  std::uint16_t media_port() const { return truth.media_port; }

  std::uint16_t port_of(Ipv4 node) const {
    const auto it = local_port.find(node);
    return it != local_port.end() ? it->second : media_port();
  }

  void push(double t, bool arrival, Unit unit) {
    queue.push(Event{t, next_order++, arrival, std::move(unit)});
  }

  void record(Ipv4 client, Direction dir, double t, const Unit& u) {
    PacketRecord rec;
    rec.timestamp = cfg.start_epoch + t + clock_offset[client];
    rec.direction = dir;
    rec.transport = u.transport;
    rec.src_addr = u.src_addr;
    rec.dst_addr = u.dst_addr;
    rec.src_port = u.src_port;
    rec.dst_port = u.dst_port;
    rec.payload_len = u.payload;
    rec.wire_len = u.payload + wire_overhead(u.transport);
    rec.tcp_flags = u.flags;
    rec.tcp_seq = u.seq;
    rec.tcp_ack = u.ack;
    records[client].push_back(rec);
  }

  // -- emission schedule ----------------------------------------------

  Unit media_unit(UnitKind kind, int flash_id, std::uint32_t payload,
                  Ipv4 from, Ipv4 to, Ipv4 dest) const {
    Unit u;
    u.from = from;
    u.to = to;
    u.src_addr = from;
    u.dst_addr = to;
    u.src_port = port_of(from);
    u.dst_port = port_of(to);
    u.kind = kind;
    u.flash_id = flash_id;
    u.payload = payload;
    u.media_dest = dest;
    return u;
  }

  void schedule_media_emission(double t, UnitKind kind, int flash_id,
                               std::uint32_t payload) {
    if (cfg.topology == TopologyKind::peer_to_peer) {
      for (Ipv4 c : participants)
        push(t, false, media_unit(kind, flash_id, payload, host, c, c));
    } else {
      push(t, false, media_unit(kind, flash_id, payload, host, relay_of(host), 0));
    }
  }

  void schedule_emissions() {
    // flash-signal feed
    if (cfg.flash_burst.packet_count > 0) {
      for (int k = 0; k * cfg.flash_period < cfg.duration; ++k) {
        const double t0 = k * cfg.flash_period;
        FlashTruth ft;
        ft.send_time = cfg.start_epoch + t0;
        truth.flashes.push_back(ft);
        for (int j = 0; j < cfg.flash_burst.packet_count; ++j)
          schedule_media_emission(t0 + j * cfg.flash_burst.intra_gap,
                                  UnitKind::flash, k, cfg.flash_burst.payload_len);
      }
    }

    // constant-rate media stream
    if (cfg.offered_rate > 0.0) {
      const double interval = cfg.cbr_payload * 8.0 / cfg.offered_rate;
      for (int i = 0; i * interval < cfg.duration; ++i)
        schedule_media_emission(i * interval, UnitKind::cbr, -1, cfg.cbr_payload);
    }

    // bidirectional background chatter on every client's primary path
    if (cfg.background.rate_pps > 0.0) {
      std::vector<std::pair<Ipv4, Ipv4>> flows;
      for (const auto& client : cfg.clients) {
        Ipv4 peer;
        if (cfg.topology == TopologyKind::peer_to_peer) {
          if (client.addr == host) continue;  // covered by the pair below
          peer = host;
        } else {
          peer = relay_of(client.addr);
        }
        flows.emplace_back(client.addr, peer);
        flows.emplace_back(peer, client.addr);
      }
      const double interval = 1.0 / cfg.background.rate_pps;
      for (std::size_t f = 0; f < flows.size(); ++f) {
        const double stagger = 0.0003 * static_cast<double>(f + 1);
        for (int i = 0; stagger + i * interval < cfg.duration; ++i) {
          Unit u = media_unit(UnitKind::background, -1,
                              cfg.background.payload_len, flows[f].first,
                              flows[f].second, 0);
          push(stagger + i * interval, false, u);
        }
      }
    }

    // tcpping-style probes toward each client's primary endpoint
    if (cfg.rtt_probe_count > 0) {
      for (std::size_t ci = 0; ci < cfg.clients.size(); ++ci) {
        const Ipv4 addr = cfg.clients[ci].addr;
        Ipv4 target;
        if (cfg.topology == TopologyKind::peer_to_peer) {
          target = addr == host ? participants.front() : host;
        } else {
          target = relay_of(addr);
        }
        for (int k = 0; k < cfg.rtt_probe_count; ++k) {
          const double t = 0.05 + 0.001 * static_cast<double>(ci) +
                           k * cfg.rtt_probe_interval;
          if (t >= cfg.duration) break;
          Unit u;
          u.from = addr;
          u.to = target;
          u.src_addr = addr;
          u.dst_addr = target;
          u.src_port = port_of(addr);
          u.dst_port = port_of(target);
          u.transport = Transport::tcp;
          u.flags = tcp_flags::syn;
          u.seq = static_cast<std::uint32_t>((ci + 1) * 1000000 + k);
          u.kind = UnitKind::probe;
          push(t, false, u);
        }
      }
    }

    // low-rate signaling keepalives to a distinct server address
    if (cfg.signaling_interval > 0.0 && cfg.signaling_addr != 0) {
      for (std::size_t ci = 0; ci < cfg.clients.size(); ++ci) {
        const Ipv4 addr = cfg.clients[ci].addr;
        const double stagger = 0.013 + 0.0007 * static_cast<double>(ci);
        for (int i = 0; stagger + i * cfg.signaling_interval < cfg.duration; ++i) {
          Unit u;
          u.from = addr;
          u.to = cfg.signaling_addr;
          u.src_addr = addr;
          u.dst_addr = cfg.signaling_addr;
          u.src_port = port_of(addr);
          u.dst_port = 443;
          u.transport = Transport::tcp;
          u.flags = tcp_flags::psh | tcp_flags::ack;
          u.payload = 48;
          u.kind = UnitKind::signaling;
          push(stagger + i * cfg.signaling_interval, false, u);
        }
      }
    }
  }

  // -- event processing -------------------------------------------------

  void send(const Event& ev) {
    const Unit& u = ev.unit;
    ++truth.emitted;
    if (captured.contains(u.from) && ev.t <= cfg.duration)
      record(u.from, Direction::outbound, ev.t, u);

    if (is_lossy(u.kind) && cfg.loss > 0.0 && u01(rng) < cfg.loss) {
      ++truth.dropped;
      return;
    }

    double depart = ev.t;
    if (cfg.cap > 0.0 && is_lossy(u.kind)) {
      auto [it, inserted] = buckets.try_emplace(std::pair{u.from, u.to});
      if (inserted) {
        it->second.rate = cfg.cap;
        it->second.capacity = cfg.cap * 0.1;
        it->second.tokens = it->second.capacity;
      }
      depart = it->second.admit(
          ev.t, 8.0 * (u.payload + wire_overhead(u.transport)));
    }

    double arrival = depart + delay(u.from, u.to);
    if (cfg.jitter > 0.0 && is_lossy(u.kind))
      arrival += (2.0 * u01(rng) - 1.0) * cfg.jitter;
    if (arrival < depart) arrival = depart;

    push(arrival, true, u);
  }

  void arrive(const Event& ev) {
    const Unit& u = ev.unit;
    ++truth.delivered;

    if (captured.contains(u.to)) {
      // the capture window closes when the session ends; late arrivals
      // (e.g. drained shaper queues) exist but are not observed
      if (ev.t <= cfg.duration) record(u.to, Direction::inbound, ev.t, u);
      if (is_media(u.kind)) {
        if (ev.t <= cfg.duration) media_bytes[u.to] += u.payload;
        if (u.kind == UnitKind::flash) {
          auto& arrivals = truth.flashes[static_cast<std::size_t>(u.flash_id)].arrivals;
          const double abs_t = cfg.start_epoch + ev.t;
          const auto it = arrivals.find(u.to);
          if (it == arrivals.end() || abs_t < it->second) arrivals[u.to] = abs_t;
        }
      }
      return;
    }

    // relay / server side
    switch (u.kind) {
      case UnitKind::flash:
      case UnitKind::cbr:
        if (cfg.topology == TopologyKind::shared_relay) {
          for (Ipv4 c : participants) {
            Unit fwd = media_unit(u.kind, u.flash_id, u.payload, u.to, c, c);
            push(ev.t, false, fwd);
          }
        } else if (u.to == relay_of(host)) {  // host-side relay fans out
          for (Ipv4 c : participants) {
            Unit fwd = media_unit(u.kind, u.flash_id, u.payload, u.to,
                                  relay_of(c), c);
            if (relay_of(c) == u.to) fwd = media_unit(u.kind, u.flash_id,
                                                      u.payload, u.to, c, c);
            push(ev.t, false, fwd);
          }
        } else {  // client-side relay delivers to its client
          Unit fwd = media_unit(u.kind, u.flash_id, u.payload, u.to,
                                u.media_dest, u.media_dest);
          push(ev.t, false, fwd);
        }
        break;
      case UnitKind::probe: {
        Unit reply;
        reply.from = u.to;
        reply.to = u.from;
        reply.src_addr = u.dst_addr;
        reply.dst_addr = u.src_addr;
        reply.src_port = u.dst_port;
        reply.dst_port = u.src_port;
        reply.transport = Transport::tcp;
        reply.flags = tcp_flags::syn | tcp_flags::ack;
        reply.seq = 0x5eed;
        reply.ack = u.seq + 1;
        reply.kind = UnitKind::probe_reply;
        push(ev.t, false, reply);
        break;
      }
      case UnitKind::signaling: {
        Unit reply;
        reply.from = u.to;
        reply.to = u.from;
        reply.src_addr = u.dst_addr;
        reply.dst_addr = u.src_addr;
        reply.src_port = u.dst_port;
        reply.dst_port = u.src_port;
        reply.transport = Transport::tcp;
        reply.flags = tcp_flags::psh | tcp_flags::ack;
        reply.payload = 48;
        reply.kind = UnitKind::signaling_reply;
        push(ev.t, false, reply);
        break;
      }
      default:
        break;  // background and replies terminate at uncaptured nodes
    }
  }

  SimOutput run() {
    truth.topology = cfg.topology;
    truth.start_epoch = cfg.start_epoch;
    truth.duration = cfg.duration;
    truth.media_port = cfg.topology == TopologyKind::peer_to_peer
                           ? 0
                           : cfg.media_port;

    for (const auto& c : cfg.clients) {
      if (c.role == Role::host) host = c.addr;
      captured.insert(c.addr);
      clock_offset[c.addr] = c.clock_offset;
      truth.clock_offsets[c.addr] = c.clock_offset;
    }
    for (const auto& c : cfg.clients)
      if (c.addr != host) participants.push_back(c.addr);

    // every client talks from a seeded ephemeral port
    for (const auto& c : cfg.clients)
      local_port[c.addr] =
          static_cast<std::uint16_t>(49152 + rng() % (65535 - 49152 + 1));

    schedule_emissions();
    while (!queue.empty()) {
      const Event ev = queue.top();
      queue.pop();
      if (ev.arrival) {
        arrive(ev);
      } else {
        send(ev);
      }
    }

    SimOutput out;
    out.clients = cfg.clients;
    for (const auto& c : cfg.clients) {
      Trace trace;
      trace.local_addr = c.addr;
      trace.records = std::move(records[c.addr]);
      std::stable_sort(trace.records.begin(), trace.records.end(),
                       [](const PacketRecord& a, const PacketRecord& b) {
                         return a.timestamp < b.timestamp;
                       });
      trace.capture_start =
          trace.records.empty() ? cfg.start_epoch : trace.records.front().timestamp;
      out.traces[c.addr] = std::move(trace);
    }
    for (const auto& [addr, bytes] : media_bytes)
      truth.delivered_rate_bps[addr] =
          8.0 * static_cast<double>(bytes) / cfg.duration;
    out.truth = std::move(truth);
    return out;
  }
};

void validate(const SimConfig& cfg) {
  if (cfg.duration <= 0.0) throw ConfigInvalid("duration must be positive");
  if (cfg.loss < 0.0 || cfg.loss >= 1.0) throw ConfigInvalid("loss must be in [0, 1)");
  if (cfg.jitter < 0.0 || cfg.cap < 0.0 || cfg.default_delay < 0.0)
    throw ConfigInvalid("jitter, cap and delays must be non-negative");
  for (const auto& [link, d] : cfg.path_delays)
    if (d < 0.0) throw ConfigInvalid("path delays must be non-negative");

  if (cfg.clients.size() < 2) throw ConfigInvalid("need at least two clients");
  std::set<Ipv4> addrs;
  int hosts = 0;
  for (const auto& c : cfg.clients) {
    if (!addrs.insert(c.addr).second)
      throw ConfigInvalid("duplicate client address");
    if (c.role == Role::host) ++hosts;
    if (!std::isfinite(c.clock_offset))
      throw ConfigInvalid("clock offset must be finite");
  }
  if (hosts != 1) throw ConfigInvalid("exactly one host required");

  if (cfg.flash_burst.packet_count > 0) {
    if (cfg.flash_burst.payload_len == 0 || cfg.flash_burst.intra_gap < 0.0 ||
        cfg.flash_period <= 0.0)
      throw ConfigInvalid("invalid flash burst");
    if (cfg.flash_burst.packet_count * cfg.flash_burst.intra_gap >=
        cfg.flash_period - 1.0)
      throw ConfigInvalid("flash burst too long for the period's quiescent gap");
  }

  switch (cfg.topology) {
    case TopologyKind::shared_relay:
      if (cfg.shared_relay == 0 || addrs.contains(cfg.shared_relay))
        throw ConfigInvalid("shared relay must be a non-client address");
      if (cfg.media_port == 0)
        throw ConfigInvalid("relay topologies need a fixed media port");
      break;
    case TopologyKind::per_client_relay: {
      std::set<Ipv4> relays;
      for (const auto& c : cfg.clients) {
        const auto it = cfg.relay_assignment.find(c.addr);
        if (it == cfg.relay_assignment.end())
          throw ConfigInvalid("relay assignment missing for a client");
        if (addrs.contains(it->second))
          throw ConfigInvalid("relay addresses must not be client addresses");
        relays.insert(it->second);
      }
      if (relays.size() < 2)
        throw ConfigInvalid("per-client topology needs at least two relays");
      if (cfg.media_port == 0)
        throw ConfigInvalid("relay topologies need a fixed media port");
      break;
    }
    case TopologyKind::peer_to_peer:
      break;  // media port forced ephemeral
  }
  if (cfg.signaling_addr != 0 && addrs.contains(cfg.signaling_addr))
    throw ConfigInvalid("signaling address collides with a client");
}

}  // namespace

SimOutput simulate(const SimConfig& config) {
  validate(config);
  Engine engine(config);
  return engine.run();
}

std::vector<SimOutput> regional_lb_scenario(const SimConfig& base,
                                            const std::vector<RelayGroup>& groups,
                                            int sessions) {
  if (groups.empty()) throw ConfigInvalid("regional scenario needs relay groups");
  if (sessions <= 0) throw ConfigInvalid("regional scenario needs sessions > 0");

  Ipv4 host = 0;
  for (const auto& c : base.clients)
    if (c.role == Role::host) host = c.addr;

  std::mt19937_64 master(base.seed);
  std::vector<SimOutput> outputs;
  outputs.reserve(static_cast<std::size_t>(sessions));
  for (int s = 0; s < sessions; ++s) {
    const auto& group = groups[master() % groups.size()];
    SimConfig cfg = base;
    cfg.seed = master();
    cfg.topology = TopologyKind::shared_relay;
    cfg.shared_relay = group.addr;
    cfg.relay_assignment.clear();
    cfg.default_delay = 0.0;
    cfg.path_delays.clear();
    cfg.path_delays[{host, group.addr}] = group.delay;
    outputs.push_back(simulate(cfg));
  }
  return outputs;
}

namespace {

std::string role_name(Role r) { return r == Role::host ? "host" : "participant"; }

std::string trace_filename(const SimClient& c) {
  return role_name(c.role) + "_" + ipv4_to_string(c.addr) + ".pcap";
}

json truth_to_json(const SimOutput& output) {
  const GroundTruth& t = output.truth;
  json j;
  j["schema_version"] = "vcbench-ground-truth/1";
  j["topology"] = to_string(t.topology);
  j["start_epoch"] = t.start_epoch;
  j["duration"] = t.duration;
  j["media_port"] = t.media_port;
  json clients = json::array();
  for (const auto& c : output.clients) {
    clients.push_back({{"addr", ipv4_to_string(c.addr)},
                       {"role", role_name(c.role)},
                       {"clock_offset", c.clock_offset},
                       {"trace_file", trace_filename(c)}});
  }
  j["clients"] = clients;
  json flashes = json::array();
  for (const auto& f : t.flashes) {
    json arrivals = json::object();
    for (const auto& [addr, at] : f.arrivals) arrivals[ipv4_to_string(addr)] = at;
    flashes.push_back({{"send_time", f.send_time}, {"arrivals", arrivals}});
  }
  j["flashes"] = flashes;
  json rates = json::object();
  for (const auto& [addr, bps] : t.delivered_rate_bps)
    rates[ipv4_to_string(addr)] = bps;
  j["delivered_rate_bps"] = rates;
  j["emitted"] = t.emitted;
  j["delivered"] = t.delivered;
  j["dropped"] = t.dropped;
  return j;
}

}  // namespace

void write_ground_truth(const SimOutput& output, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::trunc);
  if (!out) throw InputError("cannot write " + file.string());
  out << truth_to_json(output).dump(2) << '\n';
}

void write_session(const SimOutput& output, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& c : output.clients)
    write_capture_file(output.traces.at(c.addr), dir / trace_filename(c));
  write_ground_truth(output, dir / "ground_truth.json");
}

TopologyKind topology_kind_from_string(const std::string& name) {
  if (name == "shared-relay") return TopologyKind::shared_relay;
  if (name == "per-client-relay") return TopologyKind::per_client_relay;
  if (name == "peer-to-peer") return TopologyKind::peer_to_peer;
  throw ConfigInvalid("unknown topology: " + name);
}

SimConfig load_sim_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }

  try {
    SimConfig cfg;
    cfg.seed = j.value("seed", cfg.seed);
    cfg.duration = j.value("duration", cfg.duration);
    if (j.contains("topology"))
      cfg.topology = topology_kind_from_string(j["topology"].get<std::string>());
    for (const auto& c : j.at("clients")) {
      SimClient client;
      client.addr = ipv4_from_string(c.at("addr").get<std::string>());
      if (c.value("role", "participant") == std::string("host"))
        client.role = Role::host;
      client.clock_offset = c.value("clock_offset", 0.0);
      cfg.clients.push_back(client);
    }
    if (j.contains("shared_relay"))
      cfg.shared_relay = ipv4_from_string(j["shared_relay"].get<std::string>());
    if (j.contains("relay_assignment"))
      for (const auto& [client, relay] : j["relay_assignment"].items())
        cfg.relay_assignment[ipv4_from_string(client)] =
            ipv4_from_string(relay.get<std::string>());
    cfg.default_delay = j.value("default_delay", cfg.default_delay);
    if (j.contains("path_delays"))
      for (const auto& p : j["path_delays"])
        cfg.path_delays[{ipv4_from_string(p.at("from").get<std::string>()),
                         ipv4_from_string(p.at("to").get<std::string>())}] =
            p.at("delay").get<double>();
    cfg.flash_period = j.value("flash_period", cfg.flash_period);
    if (j.contains("flash_burst")) {
      const auto& fb = j["flash_burst"];
      cfg.flash_burst.packet_count =
          fb.value("packet_count", cfg.flash_burst.packet_count);
      cfg.flash_burst.payload_len =
          fb.value("payload_len", cfg.flash_burst.payload_len);
      cfg.flash_burst.intra_gap = fb.value("intra_gap", cfg.flash_burst.intra_gap);
    }
    if (j.contains("background")) {
      const auto& bg = j["background"];
      cfg.background.payload_len =
          bg.value("payload_len", cfg.background.payload_len);
      cfg.background.rate_pps = bg.value("rate_pps", cfg.background.rate_pps);
    }
    cfg.offered_rate = j.value("offered_rate", cfg.offered_rate);
    cfg.cbr_payload = j.value("cbr_payload", cfg.cbr_payload);
    cfg.cap = j.value("cap", cfg.cap);
    cfg.jitter = j.value("jitter", cfg.jitter);
    cfg.loss = j.value("loss", cfg.loss);
    if (j.contains("media_port")) {
      if (j["media_port"].is_string()) {
        if (j["media_port"].get<std::string>() != "ephemeral")
          throw ConfigInvalid("media_port must be a port number or \"ephemeral\"");
        cfg.media_port = 0;
      } else {
        cfg.media_port = j["media_port"].get<std::uint16_t>();
      }
    }
    cfg.start_epoch = j.value("start_epoch", cfg.start_epoch);
    if (j.contains("rtt_probes")) {
      cfg.rtt_probe_count = j["rtt_probes"].value("count", 0);
      cfg.rtt_probe_interval =
          j["rtt_probes"].value("interval", cfg.rtt_probe_interval);
    }
    if (j.contains("signaling")) {
      cfg.signaling_addr =
          ipv4_from_string(j["signaling"].value("addr", "203.0.113.53"));
      cfg.signaling_interval =
          j["signaling"].value("interval", cfg.signaling_interval);
    }
    return cfg;
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::optional<RegionalSpec> load_regional_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  if (!j.contains("regional_lb")) return std::nullopt;
  try {
    const auto& r = j["regional_lb"];
    RegionalSpec spec;
    spec.sessions = r.at("sessions").get<int>();
    for (const auto& g : r.at("relay_groups"))
      spec.groups.push_back({ipv4_from_string(g.at("addr").get<std::string>()),
                             g.at("delay").get<double>()});
    return spec;
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace vcbench
