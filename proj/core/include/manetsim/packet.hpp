#pragma once

#include "manetsim/types.hpp"

#include <cstdint>
#include <memory>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace manetsim {

// Control messages exchanged by the routing agents. They travel as typed
// structs; there is no bit-level encoding, only a nominal wire size used
// for overhead accounting.
namespace msg {

struct AodvHello {
    NodeId origin = kNoNode;
    std::uint32_t seq = 0;
    double lifetime = 0.0;
};

struct Rreq {
    std::uint32_t id = 0;
    NodeId origin = kNoNode;
    std::uint32_t origin_seq = 0;
    NodeId dest = kNoNode;
    std::uint32_t dest_seq = 0;
    bool unknown_seq = true;
    int hop_count = 0;
};

struct Rrep {
    NodeId dest = kNoNode;    // node the route leads to
    std::uint32_t dest_seq = 0;
    NodeId origin = kNoNode;  // node the reply travels toward
    int hop_count = 0;
    double lifetime = 0.0;
    bool gratuitous = false;
};

struct Rerr {
    std::vector<std::pair<NodeId, std::uint32_t>> unreachable;
};

struct FsrEntry {
    NodeId origin = kNoNode;
    std::uint32_t seq = 0;
    std::vector<NodeId> neighbors;
};

struct FsrUpdate {
    bool full = false;
    std::vector<FsrEntry> entries;
};

struct OlsrHello {
    std::vector<NodeId> symmetric;
    std::vector<NodeId> heard;  // asymmetric links
    std::vector<NodeId> mprs;
};

struct OlsrTc {
    NodeId origin = kNoNode;
    std::uint32_t ansn = 0;
    std::uint32_t msg_seq = 0;
    std::vector<NodeId> selectors;
};

}  // namespace msg

using ControlMessage =
    std::variant<std::monostate, msg::AodvHello, msg::Rreq, msg::Rrep, msg::Rerr, msg::FsrUpdate, msg::OlsrHello, msg::OlsrTc>;

std::string_view message_name(const ControlMessage& m) noexcept;
/// Nominal on-air size in bytes, including a 28-byte IP/UDP header.
std::uint32_t wire_size(const ControlMessage& m) noexcept;

enum class PacketClass : std::uint8_t { Data, Routing };

inline constexpr int kDataTtl = 64;

struct Packet {
    PacketId id = 0;
    PacketClass cls = PacketClass::Data;
    NodeId src = kNoNode;       // originator
    NodeId dst = kNoNode;       // final destination or kBroadcast
    NodeId prev_hop = kNoNode;  // last transmitter; kNoNode for locally originated data
    std::uint32_t size = 0;
    int ttl = 0;
    int hops = 0;
    double created = 0.0;
    std::uint32_t flow = 0;
    std::shared_ptr<const ControlMessage> msg;

    bool is_data() const noexcept { return cls == PacketClass::Data; }
};

enum class DropReason : std::uint8_t {
    NoRoute,
    MacLoss,
    TtlExpired,
    BufferTimeout,
    BufferOverflow,
    LinkBreak,
    DiscoveryFailed,
};

std::string_view to_string(DropReason r) noexcept;

}  // namespace manetsim
