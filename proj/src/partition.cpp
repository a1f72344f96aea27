#include "bgpsim/partition.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

#include "bgpsim/errors.hpp"
#include "bgpsim/rng.hpp"

namespace bgpsim {

std::string to_string(Objective o) { return o == Objective::kA ? "A" : "B"; }

Objective objective_from_string(const std::string& s) {
  if (s == "A" || s == "a") return Objective::kA;
  if (s == "B" || s == "b") return Objective::kB;
  throw ParameterError("objective must be A or B, got '" + s + "'");
}

WeightSpec WeightSpec::unit(const Graph& g) {
  return {std::vector<double>(g.edge_count(), 1.0),
          std::vector<double>(g.node_count(), 1.0)};
}

void validate(const WeightSpec& w, const Graph& g) {
  if (w.edge_w.size() != g.edge_count() || w.vertex_w.size() != g.node_count()) {
    throw ConsistencyError("weights do not match the graph (" +
                           std::to_string(w.edge_w.size()) + " edge / " +
                           std::to_string(w.vertex_w.size()) + " vertex weights for " +
                           std::to_string(g.edge_count()) + " edges / " +
                           std::to_string(g.node_count()) + " nodes)");
  }
  auto bad = [](double x) { return !std::isfinite(x) || x < 0; };
  if (std::any_of(w.edge_w.begin(), w.edge_w.end(), bad) ||
      std::any_of(w.vertex_w.begin(), w.vertex_w.end(), bad)) {
    throw ParameterError("weights must be finite and non-negative");
  }
}

WeightSpec weights_from_trace(const TraceStats& trace, const Graph& g) {
  if (trace.me.size() != g.node_count() || trace.edge_entries.size() != g.directed_count()) {
    throw ConsistencyError("trace does not belong to this graph");
  }
  WeightSpec w;
  w.edge_w.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges()) {
    w.edge_w.push_back(static_cast<double>(trace.edge_entries[g.directed_index(u, v)] +
                                           trace.edge_entries[g.directed_index(v, u)]));
  }
  w.vertex_w.assign(trace.me.begin(), trace.me.end());
  return w;
}

std::size_t Bipartition::size(int s) const {
  return static_cast<std::size_t>(std::count(side.begin(), side.end(), s));
}

std::pair<std::size_t, std::size_t> balanced_range(std::size_t n, double epsilon) {
  if (n < 2) return {1, 0};
  const double raw = std::max(0.0, epsilon) * static_cast<double>(n);
  const auto slack = static_cast<std::size_t>(std::floor(raw + 1e-9));
  std::size_t lo = n > slack ? (n - slack + 1) / 2 : 1;
  std::size_t hi = std::min(n - 1, (n + slack) / 2);
  lo = std::max<std::size_t>(lo, 1);
  return {lo, hi};
}

bool Bipartition::balanced() const {
  const auto [lo, hi] = balanced_range(side.size(), epsilon);
  const std::size_t n0 = size(0);
  return lo <= hi && n0 >= lo && n0 <= hi;
}

double objective_a(const Graph& g, const WeightSpec& w, const Bipartition& bp) {
  double cost = 0;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (bp.side[edges[i].first] != bp.side[edges[i].second]) cost += w.edge_w[i];
  }
  return cost;
}

double objective_b(const Graph& g, const WeightSpec& w, const Bipartition& bp) {
  double cost = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (NodeId u : g.neighbors(v)) {
      if (bp.side[u] != bp.side[v]) {
        cost += w.vertex_w[v];
        break;
      }
    }
  }
  return cost;
}

double evaluate(Objective o, const Graph& g, const WeightSpec& w, const Bipartition& bp) {
  return o == Objective::kA ? objective_a(g, w, bp) : objective_b(g, w, bp);
}

// ---------------------------------------------------------------------------
// Exact solver

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, const WeightSpec& w, Objective objective)
      : g_(g), w_(w), objective_(objective), n_(g.node_count()),
        side_(n_, 0), boundary_(n_, false) {
    earlier_.resize(n_);
    const auto& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      earlier_[edges[i].second].push_back({edges[i].first, w.edge_w[i]});
    }
  }

  // Minimum over splits whose side-0 size lies in [lo, hi].
  std::pair<std::vector<std::uint8_t>, double> solve(std::size_t lo, std::size_t hi) {
    lo_ = lo;
    hi_ = hi;
    best_cost_ = std::numeric_limits<double>::infinity();
    best_.clear();
    count0_ = 0;
    recurse(0, 0.0);
    return {best_, best_cost_};
  }

 private:
  struct Neighbor {
    NodeId id;
    double weight;
  };

  bool completable(std::size_t assigned) const {
    const std::size_t remaining = n_ - assigned;
    return count0_ <= hi_ && count0_ + remaining >= lo_;
  }

  void recurse(NodeId v, double partial) {
    if (partial >= best_cost_) return;
    if (!completable(v)) return;
    if (v == n_) {
      best_cost_ = partial;
      best_ = side_;
      return;
    }
    // Vertex 0 stays on side 0: labels are symmetric and the lexicographic
    // minimum always starts with 0.
    const int last_side = v == 0 ? 0 : 1;
    for (int s = 0; s <= last_side; ++s) {
      side_[v] = static_cast<std::uint8_t>(s);
      if (s == 0) ++count0_;
      marked_.clear();
      double added = 0;
      for (const auto& [u, weight] : earlier_[v]) {
        if (side_[u] == s) continue;
        if (objective_ == Objective::kA) {
          added += weight;
        } else {
          if (!boundary_[u]) {
            boundary_[u] = true;
            marked_.push_back(u);
            added += w_.vertex_w[u];
          }
          if (!boundary_[v]) {
            boundary_[v] = true;
            marked_.push_back(v);
            added += w_.vertex_w[v];
          }
        }
      }
      std::vector<NodeId> undo;
      undo.swap(marked_);
      recurse(v + 1, partial + added);
      for (NodeId x : undo) boundary_[x] = false;
      if (s == 0) --count0_;
    }
  }

  const Graph& g_;
  const WeightSpec& w_;
  Objective objective_;
  std::size_t n_;
  std::vector<std::vector<Neighbor>> earlier_;
  std::vector<std::uint8_t> side_;
  std::vector<bool> boundary_;
  std::vector<NodeId> marked_;
  std::size_t count0_ = 0;
  std::size_t lo_ = 0, hi_ = 0;
  std::vector<std::uint8_t> best_;
  double best_cost_ = 0;
};

}  // namespace

ExactResult exact_bipartition(const Graph& g, const WeightSpec& w, Objective objective,
                              double epsilon, std::size_t size_limit) {
  validate(w, g);
  const std::size_t n = g.node_count();
  if (n > size_limit) {
    throw SizeError("exact bipartition supports at most " + std::to_string(size_limit) +
                    " nodes, graph has " + std::to_string(n) +
                    "; use the heuristic solver");
  }
  const auto [lo, hi] = balanced_range(n, epsilon);
  if (lo > hi) {
    throw InfeasibleError("no bipartition of " + std::to_string(n) +
                          " nodes satisfies epsilon=" + std::to_string(epsilon));
  }
  BranchAndBound bb(g, w, objective);
  ExactResult result;
  auto [side, cost] = bb.solve(lo, hi);
  result.partition = {std::move(side), epsilon};
  result.cost = cost;
  auto [free_side, free_cost] = bb.solve(1, n - 1);
  result.unconstrained = {std::move(free_side), 1.0};
  result.unconstrained_cost = free_cost;
  return result;
}

// ---------------------------------------------------------------------------
// Heuristic

namespace {

class LocalSearch {
 public:
  LocalSearch(const Graph& g, const WeightSpec& w, Objective objective, std::size_t lo,
              std::size_t hi)
      : g_(g), w_(w), objective_(objective), n_(g.node_count()), lo_(lo), hi_(hi),
        adj_w_(g.directed_count(), 0.0), side_(n_, 0), ext_(n_, 0), delta_(n_, 0.0) {
    const auto& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      adj_w_[g.directed_index(edges[i].first, edges[i].second)] = w.edge_w[i];
      adj_w_[g.directed_index(edges[i].second, edges[i].first)] = w.edge_w[i];
    }
  }

  void reset(const std::vector<std::uint8_t>& side) {
    side_ = side;
    count0_ = static_cast<std::size_t>(std::count(side_.begin(), side_.end(), 0));
    for (NodeId v = 0; v < n_; ++v) {
      ext_[v] = 0;
      for (NodeId u : g_.neighbors(v)) ext_[v] += side_[u] != side_[v];
    }
    cost_ = 0;
    if (objective_ == Objective::kA) {
      const auto& edges = g_.edges();
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (side_[edges[i].first] != side_[edges[i].second]) cost_ += w_.edge_w[i];
      }
    } else {
      for (NodeId v = 0; v < n_; ++v) {
        if (ext_[v] > 0) cost_ += w_.vertex_w[v];
      }
    }
  }

  const std::vector<std::uint8_t>& side() const { return side_; }
  double cost() const { return cost_; }
  bool balanced() const { return count0_ >= lo_ && count0_ <= hi_; }

  // Cost change if v switched sides.
  double delta(NodeId v) const {
    const auto nb = g_.neighbors(v);
    double d = 0;
    if (objective_ == Objective::kA) {
      const std::size_t base = g_.directed_base(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        d += side_[nb[i]] == side_[v] ? adj_w_[base + i] : -adj_w_[base + i];
      }
      return d;
    }
    const std::size_t ext_after = nb.size() - ext_[v];
    d += w_.vertex_w[v] * (static_cast<int>(ext_after > 0) - static_cast<int>(ext_[v] > 0));
    for (NodeId u : nb) {
      if (side_[u] == side_[v]) {
        if (ext_[u] == 0) d += w_.vertex_w[u];
      } else {
        if (ext_[u] == 1) d -= w_.vertex_w[u];
      }
    }
    return d;
  }

  void move(NodeId v) {
    cost_ += delta(v);
    const auto from = side_[v];
    for (NodeId u : g_.neighbors(v)) {
      if (side_[u] == from) {
        ++ext_[u];
      } else {
        --ext_[u];
      }
    }
    ext_[v] = g_.degree(v) - ext_[v];
    side_[v] = static_cast<std::uint8_t>(1 - from);
    if (from == 0) {
      --count0_;
    } else {
      ++count0_;
    }
  }

  // Count of side 0 after moving a vertex currently on side s.
  std::size_t count0_after(int s) const { return s == 0 ? count0_ - 1 : count0_ + 1; }

  bool pass() {
    const std::size_t slack_lo = lo_ > 1 ? lo_ - 1 : 1;
    const std::size_t slack_hi = std::min(hi_ + 1, n_ - 1);
    std::vector<bool> locked(n_, false);
    std::set<std::pair<double, NodeId>> queue[2];
    for (NodeId v = 0; v < n_; ++v) {
      delta_[v] = delta(v);
      queue[side_[v]].insert({delta_[v], v});
    }

    const double start_cost = cost_;
    double best_cost = balanced() ? cost_ : std::numeric_limits<double>::infinity();
    std::size_t best_len = 0;
    std::vector<NodeId> moves;
    const std::size_t stall_limit = std::max<std::size_t>(50, n_ / 20);
    std::size_t since_best = 0;

    std::vector<NodeId> touched;
    std::vector<std::uint32_t> stamp(n_, 0);
    std::uint32_t epoch = 0;

    while (since_best < stall_limit) {
      const NodeId* pick = nullptr;
      NodeId candidate[2];
      bool ok[2] = {false, false};
      for (int s = 0; s < 2; ++s) {
        const std::size_t c0 = count0_after(s);
        if (queue[s].empty() || c0 < slack_lo || c0 > slack_hi) continue;
        candidate[s] = queue[s].begin()->second;
        ok[s] = true;
      }
      if (ok[0] && ok[1]) {
        pick = *queue[0].begin() < *queue[1].begin() ? &candidate[0] : &candidate[1];
      } else if (ok[0]) {
        pick = &candidate[0];
      } else if (ok[1]) {
        pick = &candidate[1];
      } else {
        break;
      }
      const NodeId v = *pick;
      queue[side_[v]].erase({delta_[v], v});
      locked[v] = true;
      move(v);
      moves.push_back(v);

      ++epoch;
      touched.clear();
      auto touch = [&](NodeId x) {
        if (!locked[x] && stamp[x] != epoch) {
          stamp[x] = epoch;
          touched.push_back(x);
        }
      };
      for (NodeId u : g_.neighbors(v)) {
        touch(u);
        if (objective_ == Objective::kB) {
          for (NodeId x : g_.neighbors(u)) touch(x);
        }
      }
      for (NodeId x : touched) {
        queue[side_[x]].erase({delta_[x], x});
        delta_[x] = delta(x);
        queue[side_[x]].insert({delta_[x], x});
      }

      if (balanced() && cost_ < best_cost) {
        best_cost = cost_;
        best_len = moves.size();
        since_best = 0;
      } else {
        ++since_best;
      }
    }

    for (std::size_t i = moves.size(); i > best_len; --i) move(moves[i - 1]);
    return cost_ < start_cost;
  }

  // First-improvement descent over pairs (u on side 0, v on side 1).
  bool swap_descent() {
    bool improved_any = false;
    bool improved = true;
    while (improved) {
      improved = false;
      for (NodeId u = 0; u < n_ && !improved; ++u) {
        if (side_[u] != 0) continue;
        for (NodeId v = 0; v < n_; ++v) {
          if (side_[v] != 1) continue;
          const double before = cost_;
          move(u);
          move(v);
          if (cost_ < before - 1e-12) {
            improved = improved_any = true;
            break;
          }
          move(v);
          move(u);
          cost_ = before;
        }
      }
    }
    return improved_any;
  }

 private:
  const Graph& g_;
  const WeightSpec& w_;
  Objective objective_;
  std::size_t n_;
  std::size_t lo_, hi_;
  std::vector<double> adj_w_;
  std::vector<std::uint8_t> side_;
  std::vector<std::size_t> ext_;
  std::vector<double> delta_;
  std::size_t count0_ = 0;
  double cost_ = 0;
};

std::vector<std::uint8_t> bfs_start(const Graph& g, std::size_t target0, Rng& rng) {
  const std::size_t n = g.node_count();
  std::vector<std::uint8_t> side(n, 1);
  std::vector<bool> seen(n, false);
  std::size_t taken = 0;
  std::deque<NodeId> frontier;
  while (taken < target0) {
    if (frontier.empty()) {
      NodeId s;
      do {
        s = static_cast<NodeId>(rng.uniform_index(n));
      } while (seen[s]);
      seen[s] = true;
      frontier.push_back(s);
    }
    const NodeId v = frontier.front();
    frontier.pop_front();
    side[v] = 0;
    ++taken;
    for (NodeId u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = true;
        frontier.push_back(u);
      }
    }
  }
  return side;
}

std::vector<std::uint8_t> random_start(std::size_t n, std::size_t target0, Rng& rng) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
  std::vector<std::uint8_t> side(n, 1);
  for (std::size_t i = 0; i < target0; ++i) side[order[i]] = 0;
  return side;
}

}  // namespace

HeuristicResult heuristic_bipartition(const Graph& g, const WeightSpec& w, Objective objective,
                                      double epsilon, const HeuristicOptions& options) {
  validate(w, g);
  const std::size_t n = g.node_count();
  if (n < 2) throw ParameterError("bipartition needs at least 2 nodes");
  const auto [lo, hi] = balanced_range(n, epsilon);
  if (lo > hi) {
    throw InfeasibleError("no bipartition of " + std::to_string(n) +
                          " nodes satisfies epsilon=" + std::to_string(epsilon));
  }
  const std::size_t target0 = std::clamp(n / 2, lo, hi);

  LocalSearch search(g, w, objective, lo, hi);
  HeuristicResult best;
  best.cost = std::numeric_limits<double>::infinity();
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);

  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng(Rng::derive(options.seed, r));
    search.reset(r % 2 == 0 ? bfs_start(g, target0, rng) : random_start(n, target0, rng));
    for (std::size_t p = 0; p < options.max_passes; ++p) {
      if (!search.pass()) break;
    }
    if (n <= options.swap_limit) {
      while (search.swap_descent()) {
        if (!search.pass()) break;
      }
    }
    if (search.cost() < best.cost) {
      best.cost = search.cost();
      best.partition = {search.side(), epsilon};
      best.best_restart = r;
    }
  }

  if (best.partition.side[0] != 0) {
    for (auto& s : best.partition.side) s = static_cast<std::uint8_t>(1 - s);
  }
  // Incremental cost accumulates rounding; report the exact evaluation.
  best.cost = evaluate(objective, g, w, best.partition);
  return best;
}

}  // namespace bgpsim
