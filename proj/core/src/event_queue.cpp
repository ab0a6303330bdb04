#include "manetsim/event_queue.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace manetsim {

void EventQueue::push(double t, EventPayload payload) {
    if (t < now_) throw std::logic_error(fmt::format("event scheduled in the past: t={} now={}", t, now_));
    heap_.push(Event{t, next_seq_++, std::move(payload)});
}

std::optional<Event> EventQueue::pop() {
    if (heap_.empty()) return std::nullopt;
    Event e = heap_.top();
    heap_.pop();
    now_ = e.t;
    return e;
}

const Event* EventQueue::peek() const {
    return heap_.empty() ? nullptr : &heap_.top();
}

}  // namespace manetsim
