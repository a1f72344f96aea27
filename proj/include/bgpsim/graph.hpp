#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bgpsim/event_queue.hpp"

namespace bgpsim {

using Edge = std::pair<NodeId, NodeId>;  // always stored with first < second

// Undirected simple graph on nodes 0..n-1 with sorted adjacency (CSR).
// Immutable after construction.
class Graph {
 public:
  Graph() = default;
  // Throws ParameterError on self-loops, duplicate edges or ids >= n.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }  // sorted

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  // Directed edges u->v are numbered 0..2m-1 in (u, v) order; this is the
  // position of v in the concatenated adjacency.
  std::size_t directed_index(NodeId u, NodeId v) const;  // requires has_edge
  std::size_t directed_count() const { return adjacency_.size(); }
  std::size_t directed_base(NodeId u) const { return offsets_[u]; }

  bool is_connected() const;
  // Hop distances from src; unreachable nodes get SIZE_MAX.
  std::vector<std::size_t> bfs_distances(NodeId src) const;

  bool operator==(const Graph& o) const {
    return offsets_ == o.offsets_ && adjacency_ == o.adjacency_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
};

// Membership bitmap over 0..n-1.
class VertexSet {
 public:
  explicit VertexSet(std::size_t n) : in_(n, false) {}
  VertexSet(std::size_t n, std::initializer_list<NodeId> members);

  void insert(NodeId v) { in_.at(v) = true; }
  bool contains(NodeId v) const { return in_.at(v); }
  std::size_t universe() const { return in_.size(); }

 private:
  std::vector<bool> in_;
};

// 1 iff v is outside `part` and has a neighbor inside it.
int boundary_indicator(NodeId v, const VertexSet& part, const Graph& g);

// Number of neighbors of v outside `part`.
std::size_t external_neighbors(NodeId v, const VertexSet& part, const Graph& g);

// Edge-list text: one "u v" pair per line, '#' starts a comment. A
// "# nodes N" header fixes the node count (otherwise max id + 1).
Graph parse_edgelist(std::istream& in);
Graph load_edgelist(const std::filesystem::path& path);

// Writes "# nodes N", the given comment lines (each prefixed "# "), then
// sorted edges.
void write_edgelist(std::ostream& out, const Graph& g,
                    const std::vector<std::string>& comments = {});
void save_edgelist(const Graph& g, const std::filesystem::path& path,
                   const std::vector<std::string>& comments = {});

}  // namespace bgpsim
