#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <deque>
#include <queue>
#include <unordered_map>
#include <variant>
#include <vector>

#include "bgpsim/rng.hpp"

namespace bgpsim {

using NodeId = std::uint32_t;
using Tick = std::uint64_t;

struct SessionEstablish {
  NodeId a;
  NodeId b;
  bool operator==(const SessionEstablish&) const = default;
};

struct Origination {
  NodeId router;
  bool operator==(const Origination&) const = default;
};

// message_ref indexes a message store owned by whoever drives the engine.
struct UpdateDelivery {
  NodeId sender;
  NodeId receiver;
  std::uint64_t message_ref;
  bool operator==(const UpdateDelivery&) const = default;
};

// Minimum-route-advertisement timer of (router -> peer) expired.
struct MraiExpiry {
  NodeId router;
  NodeId peer;
  bool operator==(const MraiExpiry&) const = default;
};

using EventKind =
    std::variant<SessionEstablish, Origination, UpdateDelivery, MraiExpiry>;

struct Event {
  Tick time = 0;
  std::uint64_t seq = 0;
  EventKind kind;

  bool is_delivery() const {
    return std::holds_alternative<UpdateDelivery>(kind);
  }
  bool operator==(const Event&) const = default;
};

struct OrderingPolicy {
  enum class Mode { kFifo, kRandomDelivery };
  Mode mode = Mode::kFifo;
  std::uint64_t seed = 0;

  static OrderingPolicy fifo() { return {}; }
  static OrderingPolicy random_delivery(std::uint64_t seed) {
    return {Mode::kRandomDelivery, seed};
  }
};

inline constexpr std::uint64_t kDefaultEventCap = 10'000'000'000ULL;

// Pending-event set with a simulation clock.
//
// Fifo pops in (time, seq) order. RandomDelivery keeps deliveries in a
// separate pool and draws one uniformly at random (swap-remove, so the pool
// order is itself deterministic); the draw selects a channel and that
// channel's oldest message is delivered, so each session stays in order.
// Other events keep (time, seq) order and take precedence once due
// (time <= now); an empty delivery pool lets the clock jump to the next one.
class EventQueue {
 public:
  explicit EventQueue(OrderingPolicy policy = OrderingPolicy::fifo());

  // Returns the assigned sequence number. Throws ClockViolation if
  // time < now().
  std::uint64_t schedule(Tick time, EventKind kind);

  std::optional<Event> next();

  Tick now() const { return clock_; }
  std::size_t size() const { return ordered_.size() + tokens_.size(); }
  bool empty() const { return size() == 0; }
  std::uint64_t scheduled_total() const { return next_seq_; }
  std::uint64_t popped_total() const { return popped_; }
  const OrderingPolicy& policy() const { return policy_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  Event take(Event e);

  OrderingPolicy policy_;
  Rng rng_;
  std::priority_queue<Event, std::vector<Event>, Later> ordered_;
  // RandomDelivery only: one token per pending delivery naming its
  // (sender, receiver) channel; each channel delivers in send order.
  std::vector<std::uint64_t> tokens_;
  std::unordered_map<std::uint64_t, std::deque<Event>> channels_;
  Tick clock_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t popped_ = 0;
};

using EventHandler = std::function<void(const Event&, EventQueue&)>;

// Pops and handles events until none remain. The handler may schedule
// successors on the queue it is given. Returns the number of events handled.
// Throws DivergenceError when more than `cap` events would be processed.
std::uint64_t run_until_quiescent(EventQueue& queue, const EventHandler& handler,
                                  std::uint64_t cap = kDefaultEventCap);

}  // namespace bgpsim
