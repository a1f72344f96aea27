#include "bgpsim/event_queue.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "bgpsim/errors.hpp"

namespace bgpsim {

EventQueue::EventQueue(OrderingPolicy policy)
    : policy_(policy), rng_(policy.seed) {}

std::uint64_t EventQueue::schedule(Tick time, EventKind kind) {
  if (time < clock_) {
    throw ClockViolation("event scheduled at t=" + std::to_string(time) +
                         " before current clock t=" + std::to_string(clock_));
  }
  Event e{time, next_seq_++, std::move(kind)};
  if (policy_.mode == OrderingPolicy::Mode::kRandomDelivery && e.is_delivery()) {
    const auto& d = std::get<UpdateDelivery>(e.kind);
    const std::uint64_t channel = (std::uint64_t{d.sender} << 32) | d.receiver;
    tokens_.push_back(channel);
    channels_[channel].push_back(std::move(e));
  } else {
    ordered_.push(std::move(e));
  }
  return next_seq_ - 1;
}

Event EventQueue::take(Event e) {
  clock_ = std::max(clock_, e.time);
  ++popped_;
  return e;
}

std::optional<Event> EventQueue::next() {
  if (policy_.mode == OrderingPolicy::Mode::kFifo ||
      tokens_.empty()) {
    if (ordered_.empty()) return std::nullopt;
    Event e = ordered_.top();
    ordered_.pop();
    return take(std::move(e));
  }
  if (!ordered_.empty() && ordered_.top().time <= clock_) {
    Event e = ordered_.top();
    ordered_.pop();
    return take(std::move(e));
  }
  const auto pick = rng_.uniform_index(tokens_.size());
  std::swap(tokens_[pick], tokens_.back());
  const auto it = channels_.find(tokens_.back());
  tokens_.pop_back();
  Event e = std::move(it->second.front());
  it->second.pop_front();
  if (it->second.empty()) channels_.erase(it);
  return take(std::move(e));
}

std::uint64_t run_until_quiescent(EventQueue& queue, const EventHandler& handler,
                                  std::uint64_t cap) {
  std::uint64_t count = 0;
  while (auto e = queue.next()) {
    if (++count > cap) {
      throw DivergenceError("event cap of " + std::to_string(cap) +
                            " exceeded before quiescence");
    }
    handler(*e, queue);
  }
  return count;
}

}  // namespace bgpsim
