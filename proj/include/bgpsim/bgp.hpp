#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "bgpsim/event_queue.hpp"
#include "bgpsim/graph.hpp"

namespace bgpsim {

// Node ids from the next hop to the origin; the last element is the
// destination. A router's route to itself is the single-element path [self].
using Path = std::vector<NodeId>;

struct RouteEntry {
  NodeId dest = 0;
  Path path;
  bool operator==(const RouteEntry&) const = default;
};

struct UpdateMessage {
  NodeId sender = 0;
  NodeId receiver = 0;
  std::vector<RouteEntry> entries;
};

// Strict preference: shorter path first, then smaller next hop, then
// lexicographically smaller path. Since the next hop is path[0], the last two
// keys collapse into one lexicographic comparison.
bool preferred(const Path& a, const Path& b);

// Best-route selection over loop-free candidate paths to one destination.
// A self-origination always wins. Empty paths in `candidates` are skipped.
std::optional<RouteEntry> decision(NodeId dest, std::span<const Path> candidates,
                                   const Path* self_origination = nullptr);

// Per-run accounting. Directed-edge counters are indexed by
// Graph::directed_index(u, v).
struct TraceStats {
  std::vector<std::uint64_t> me;            // RT-entry modifications per node
  std::vector<std::uint64_t> edge_entries;  // entries sent u->v
  std::vector<std::uint64_t> edge_updates;  // update messages sent u->v
  std::uint64_t total_updates = 0;
  std::uint64_t total_entries = 0;

  TraceStats() = default;
  explicit TraceStats(const Graph& g)
      : me(g.node_count(), 0),
        edge_entries(g.directed_count(), 0),
        edge_updates(g.directed_count(), 0) {}

  double avg_entries_per_update() const {
    return total_updates == 0
               ? 0.0
               : static_cast<double>(total_entries) / static_cast<double>(total_updates);
  }
  void record(const Graph& g, const UpdateMessage& m);
  bool operator==(const TraceStats&) const = default;
};

// Outgoing effects of one router action.
struct Outbox {
  std::vector<UpdateMessage> messages;
  std::vector<std::pair<NodeId, Tick>> timers;  // (peer, expiry time)
};

// One router's routing state: best routes, Adj-RIB-In per peer, session
// flags, and per-peer MRAI batching state.
class Router {
 public:
  Router(NodeId self, std::span<const NodeId> peers, std::size_t node_count);

  NodeId id() const { return self_; }
  std::span<const NodeId> peers() const { return peers_; }

  // nullptr when no route is installed.
  const Path* best(NodeId dest) const;
  const Path* ribin(NodeId peer, NodeId dest) const;
  std::vector<RouteEntry> best_table() const;  // ordered by dest
  std::uint64_t modifications() const { return modifications_; }
  bool session_up(NodeId peer) const;
  std::size_t pending(NodeId peer) const;

  // Installs the self route. Returns false if already installed.
  bool originate(Tick now, Tick mrai, Outbox& out);

  // Loop-discard, store in Adj-RIB-In, re-decide, advertise changed bests.
  // Throws MalformedUpdate / SessionError on invalid input.
  void process_update(const UpdateMessage& msg, Tick now, Tick mrai, Outbox& out);

  // Batches every pending entry for `peer` into one update and re-arms the
  // timer. Returns nullopt when nothing is pending.
  std::optional<UpdateMessage> mrai_flush(NodeId peer, Tick now, Tick mrai);

  // Marks the session up and returns the full-table dump for the peer
  // (nullopt if the table is empty). Throws SessionError if already up.
  std::optional<UpdateMessage> open_session(NodeId peer);

 private:
  std::size_t slot_of(NodeId peer) const;  // peers_.size() if not a peer
  void install(NodeId dest, Path path, Tick now, Tick mrai, Outbox& out);
  void advertise(NodeId dest, Tick now, Tick mrai, Outbox& out);
  Path advertised_path(NodeId dest) const;

  NodeId self_;
  std::vector<NodeId> peers_;
  std::vector<Path> best_;                 // by dest; empty = none
  std::vector<std::vector<Path>> ribin_;   // [dest][slot]; lazily sized
  std::vector<bool> session_up_;           // by slot
  std::vector<std::map<NodeId, Path>> pending_;  // by slot, dest -> path
  std::vector<Tick> next_allowed_;         // by slot
  std::vector<bool> flush_scheduled_;      // by slot
  std::uint64_t modifications_ = 0;
};

// Both ends open the session and dump their full tables to each other.
// Throws SessionError when uv is not an edge or the session already exists.
std::vector<UpdateMessage> establish_session(NodeId u, NodeId v, std::vector<Router>& routers,
                                             const Graph& g);

enum class SessionOrder { kCanonical };

struct ScenarioConfig {
  int scenario = 1;  // 1, 2 or 3
  Tick mrai = 0;
  std::uint64_t seed = 0;
  SessionOrder session_order = SessionOrder::kCanonical;
  std::uint64_t event_cap = kDefaultEventCap;
};

void validate(const ScenarioConfig& config);

struct ScenarioResult {
  TraceStats trace;
  std::vector<Router> routers;
  std::uint64_t events = 0;
  Tick final_clock = 0;
};

// Starts from empty tables. Scenario 1: all originations and sessions first,
// then Fifo delivery. Scenario 2: same, RandomDelivery(seed). Scenario 3:
// originate, then open sessions one by one in session_order, running to
// quiescence after each. Throws ConsistencyError on a disconnected graph.
ScenarioResult run_scenario(const Graph& g, const ScenarioConfig& config);

// Sessions in Scenario 3 order: edges sorted by (min endpoint, max endpoint).
std::vector<Edge> session_order(const Graph& g, SessionOrder order);

// True when every router holds the same best table in both results.
bool same_tables(std::span<const Router> a, std::span<const Router> b);

}  // namespace bgpsim
