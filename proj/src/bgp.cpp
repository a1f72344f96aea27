#include "bgpsim/bgp.hpp"

#include <algorithm>
#include <string>

#include "bgpsim/errors.hpp"

namespace bgpsim {

bool preferred(const Path& a, const Path& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::optional<RouteEntry> decision(NodeId dest, std::span<const Path> candidates,
                                   const Path* self_origination) {
  if (self_origination != nullptr) return RouteEntry{dest, *self_origination};
  const Path* best = nullptr;
  for (const Path& c : candidates) {
    if (c.empty()) continue;
    if (best == nullptr || preferred(c, *best)) best = &c;
  }
  if (best == nullptr) return std::nullopt;
  return RouteEntry{dest, *best};
}

void TraceStats::record(const Graph& g, const UpdateMessage& m) {
  const std::size_t e = g.directed_index(m.sender, m.receiver);
  ++edge_updates[e];
  edge_entries[e] += m.entries.size();
  ++total_updates;
  total_entries += m.entries.size();
}

Router::Router(NodeId self, std::span<const NodeId> peers, std::size_t node_count)
    : self_(self),
      peers_(peers.begin(), peers.end()),
      best_(node_count),
      ribin_(node_count),
      session_up_(peers_.size(), false),
      pending_(peers_.size()),
      next_allowed_(peers_.size(), 0),
      flush_scheduled_(peers_.size(), false) {}

std::size_t Router::slot_of(NodeId peer) const {
  auto it = std::lower_bound(peers_.begin(), peers_.end(), peer);
  if (it == peers_.end() || *it != peer) return peers_.size();
  return static_cast<std::size_t>(it - peers_.begin());
}

const Path* Router::best(NodeId dest) const {
  if (dest >= best_.size() || best_[dest].empty()) return nullptr;
  return &best_[dest];
}

const Path* Router::ribin(NodeId peer, NodeId dest) const {
  const std::size_t slot = slot_of(peer);
  if (slot == peers_.size() || dest >= ribin_.size() || ribin_[dest].empty() ||
      ribin_[dest][slot].empty()) {
    return nullptr;
  }
  return &ribin_[dest][slot];
}

std::vector<RouteEntry> Router::best_table() const {
  std::vector<RouteEntry> table;
  for (NodeId d = 0; d < best_.size(); ++d) {
    if (!best_[d].empty()) table.push_back({d, best_[d]});
  }
  return table;
}

bool Router::session_up(NodeId peer) const {
  const std::size_t slot = slot_of(peer);
  return slot < peers_.size() && session_up_[slot];
}

std::size_t Router::pending(NodeId peer) const {
  const std::size_t slot = slot_of(peer);
  return slot < peers_.size() ? pending_[slot].size() : 0;
}

Path Router::advertised_path(NodeId dest) const {
  if (dest == self_) return {self_};
  Path p;
  p.reserve(best_[dest].size() + 1);
  p.push_back(self_);
  p.insert(p.end(), best_[dest].begin(), best_[dest].end());
  return p;
}

bool Router::originate(Tick now, Tick mrai, Outbox& out) {
  if (!best_[self_].empty()) return false;
  install(self_, {self_}, now, mrai, out);
  return true;
}

void Router::install(NodeId dest, Path path, Tick now, Tick mrai, Outbox& out) {
  best_[dest] = std::move(path);
  ++modifications_;
  advertise(dest, now, mrai, out);
}

void Router::advertise(NodeId dest, Tick now, Tick mrai, Outbox& out) {
  for (std::size_t slot = 0; slot < peers_.size(); ++slot) {
    if (!session_up_[slot]) continue;
    pending_[slot][dest] = advertised_path(dest);
    if (now >= next_allowed_[slot]) {
      if (auto msg = mrai_flush(peers_[slot], now, mrai)) {
        out.messages.push_back(std::move(*msg));
      }
    } else if (!flush_scheduled_[slot]) {
      flush_scheduled_[slot] = true;
      out.timers.emplace_back(peers_[slot], next_allowed_[slot]);
    }
  }
}

std::optional<UpdateMessage> Router::mrai_flush(NodeId peer, Tick now, Tick mrai) {
  const std::size_t slot = slot_of(peer);
  if (slot == peers_.size()) {
    throw SessionError("router " + std::to_string(self_) + " has no peer " +
                       std::to_string(peer));
  }
  flush_scheduled_[slot] = false;
  auto& batch = pending_[slot];
  if (batch.empty()) return std::nullopt;
  UpdateMessage msg{self_, peer, {}};
  msg.entries.reserve(batch.size());
  for (auto& [dest, path] : batch) msg.entries.push_back({dest, std::move(path)});
  batch.clear();
  next_allowed_[slot] = now + mrai;
  return msg;
}

std::optional<UpdateMessage> Router::open_session(NodeId peer) {
  const std::size_t slot = slot_of(peer);
  if (slot == peers_.size()) {
    throw SessionError("no link between " + std::to_string(self_) + " and " +
                       std::to_string(peer));
  }
  if (session_up_[slot]) {
    throw SessionError("session " + std::to_string(self_) + "-" + std::to_string(peer) +
                       " already established");
  }
  session_up_[slot] = true;
  UpdateMessage msg{self_, peer, {}};
  for (NodeId d = 0; d < best_.size(); ++d) {
    if (!best_[d].empty()) msg.entries.push_back({d, advertised_path(d)});
  }
  if (msg.entries.empty()) return std::nullopt;
  return msg;
}

void Router::process_update(const UpdateMessage& msg, Tick now, Tick mrai, Outbox& out) {
  if (msg.receiver != self_) {
    throw MalformedUpdate("update for " + std::to_string(msg.receiver) +
                          " delivered to " + std::to_string(self_));
  }
  const std::size_t slot = slot_of(msg.sender);
  if (slot == peers_.size() || !session_up_[slot]) {
    throw SessionError("update from " + std::to_string(msg.sender) +
                       " without an established session at " + std::to_string(self_));
  }
  if (msg.entries.empty()) throw MalformedUpdate("update carries no entries");

  for (const RouteEntry& entry : msg.entries) {
    const NodeId dest = entry.dest;
    if (entry.path.empty() || entry.path.back() != dest || dest >= best_.size()) {
      throw MalformedUpdate("malformed entry from " + std::to_string(msg.sender) +
                            " for destination " + std::to_string(dest));
    }
    if (std::find(entry.path.begin(), entry.path.end(), self_) != entry.path.end()) {
      continue;  // loop
    }
    auto& candidates = ribin_[dest];
    if (candidates.empty()) candidates.resize(peers_.size());
    candidates[slot] = entry.path;
    const Path& offered = candidates[slot];
    const Path& current = best_[dest];

    if (current.empty()) {
      install(dest, offered, now, mrai, out);
    } else if (current.front() != msg.sender) {
      if (preferred(offered, current)) install(dest, offered, now, mrai, out);
    } else if (offered != current) {
      // The current best came from this peer and was replaced.
      if (preferred(offered, current)) {
        install(dest, offered, now, mrai, out);
      } else if (auto choice = decision(dest, candidates); choice && choice->path != current) {
        install(dest, std::move(choice->path), now, mrai, out);
      }
    }
  }
}

std::vector<UpdateMessage> establish_session(NodeId u, NodeId v, std::vector<Router>& routers,
                                             const Graph& g) {
  if (!g.has_edge(u, v)) {
    throw SessionError("session on non-edge " + std::to_string(u) + "-" + std::to_string(v));
  }
  if (routers[u].session_up(v) || routers[v].session_up(u)) {
    throw SessionError("session " + std::to_string(u) + "-" + std::to_string(v) +
                       " already established");
  }
  std::vector<UpdateMessage> out;
  auto from_u = routers[u].open_session(v);
  auto from_v = routers[v].open_session(u);
  if (from_u) out.push_back(std::move(*from_u));
  if (from_v) out.push_back(std::move(*from_v));
  return out;
}

void validate(const ScenarioConfig& config) {
  if (config.scenario < 1 || config.scenario > 3) {
    throw ParameterError("scenario must be 1, 2 or 3, got " + std::to_string(config.scenario));
  }
}

std::vector<Edge> session_order(const Graph& g, SessionOrder order) {
  switch (order) {
    case SessionOrder::kCanonical:
      return g.edges();  // already sorted by (min, max)
  }
  return g.edges();
}

namespace {

// Slot store for in-flight messages referenced by UpdateDelivery events.
class MessageStore {
 public:
  std::uint64_t put(UpdateMessage m) {
    if (!free_.empty()) {
      auto ref = free_.back();
      free_.pop_back();
      slots_[ref] = std::move(m);
      return ref;
    }
    slots_.push_back(std::move(m));
    return slots_.size() - 1;
  }
  UpdateMessage take(std::uint64_t ref) {
    free_.push_back(ref);
    return std::move(slots_[ref]);
  }

 private:
  std::vector<UpdateMessage> slots_;
  std::vector<std::uint64_t> free_;
};

}  // namespace

ScenarioResult run_scenario(const Graph& g, const ScenarioConfig& config) {
  validate(config);
  if (!g.is_connected()) throw ConsistencyError("topology is not connected");

  const std::size_t n = g.node_count();
  ScenarioResult result;
  result.trace = TraceStats(g);
  result.routers.reserve(n);
  for (NodeId v = 0; v < n; ++v) result.routers.emplace_back(v, g.neighbors(v), n);

  EventQueue queue(config.scenario == 2 ? OrderingPolicy::random_delivery(config.seed)
                                        : OrderingPolicy::fifo());
  MessageStore store;
  auto& routers = result.routers;
  auto& trace = result.trace;
  Outbox out;

  auto dispatch = [&](EventQueue& q) {
    for (auto& m : out.messages) {
      trace.record(g, m);
      const NodeId s = m.sender, r = m.receiver;
      q.schedule(q.now() + 1, UpdateDelivery{s, r, store.put(std::move(m))});
    }
    out.messages.clear();
  };

  auto handler = [&](const Event& e, EventQueue& q) {
    NodeId owner = 0;  // router whose MRAI timers get armed
    std::visit(
        [&](const auto& ev) {
          using T = std::decay_t<decltype(ev)>;
          if constexpr (std::is_same_v<T, Origination>) {
            owner = ev.router;
            routers[ev.router].originate(q.now(), config.mrai, out);
          } else if constexpr (std::is_same_v<T, SessionEstablish>) {
            owner = ev.a;
            out.messages = establish_session(ev.a, ev.b, routers, g);
          } else if constexpr (std::is_same_v<T, UpdateDelivery>) {
            owner = ev.receiver;
            routers[ev.receiver].process_update(store.take(ev.message_ref), q.now(),
                                                config.mrai, out);
          } else {
            owner = ev.router;
            if (auto m = routers[ev.router].mrai_flush(ev.peer, q.now(), config.mrai)) {
              out.messages.push_back(std::move(*m));
            }
          }
        },
        e.kind);
    for (const auto& [peer, at] : out.timers) q.schedule(at, MraiExpiry{owner, peer});
    out.timers.clear();
    dispatch(q);
  };

  std::uint64_t budget = config.event_cap;
  auto drain = [&] {
    const auto processed = run_until_quiescent(queue, handler, budget);
    budget -= processed;
    result.events += processed;
  };

  for (NodeId v = 0; v < n; ++v) queue.schedule(0, Origination{v});
  const auto sessions = session_order(g, config.session_order);
  if (config.scenario == 3) {
    drain();
    for (const auto& [u, v] : sessions) {
      queue.schedule(queue.now(), SessionEstablish{u, v});
      drain();
    }
  } else {
    for (const auto& [u, v] : sessions) queue.schedule(0, SessionEstablish{u, v});
    drain();
  }

  for (NodeId v = 0; v < n; ++v) trace.me[v] = routers[v].modifications();
  result.final_clock = queue.now();
  return result;
}

bool same_tables(std::span<const Router> a, std::span<const Router> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v].best_table() != b[v].best_table()) return false;
  }
  return true;
}

}  // namespace bgpsim
