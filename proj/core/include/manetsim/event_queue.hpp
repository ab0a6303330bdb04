#pragma once

#include "manetsim/packet.hpp"
#include "manetsim/types.hpp"

#include <cstdint>
#include <optional>
#include <queue>
#include <variant>
#include <vector>

namespace manetsim {

namespace ev {

struct PacketRx {
    NodeId receiver = kNoNode;
    Packet packet;
    std::uint64_t tx_id = 0;
    bool lost = false;
};

struct TimerFire {
    NodeId node = kNoNode;
    std::uint64_t token = 0;
};

struct TrafficSend {
    std::uint32_t flow = 0;
    std::uint64_t index = 0;  // emission number within the flow
};

/// Unicast that found its next hop out of range; the sender gets the packet back.
struct TxFailed {
    NodeId node = kNoNode;
    NodeId next_hop = kNoNode;
    Packet packet;
};

}  // namespace ev

using EventPayload = std::variant<ev::PacketRx, ev::TimerFire, ev::TrafficSend, ev::TxFailed>;

struct Event {
    double t = 0.0;
    std::uint64_t seq = 0;
    EventPayload payload;
};

/// Min-queue on (t, seq); seq is the insertion counter, so ties pop in
/// insertion order.
class EventQueue {
public:
    /// Throws std::logic_error when `t` is earlier than the last popped time.
    void push(double t, EventPayload payload);
    std::optional<Event> pop();
    const Event* peek() const;

    bool empty() const noexcept { return heap_.empty(); }
    std::size_t size() const noexcept { return heap_.size(); }
    double now() const noexcept { return now_; }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const noexcept {
            return a.t != b.t ? a.t > b.t : a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_seq_ = 0;
    double now_ = 0.0;
};

}  // namespace manetsim
