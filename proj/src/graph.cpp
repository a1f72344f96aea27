#include "bgpsim/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "bgpsim/errors.hpp"

namespace bgpsim {

Graph::Graph(std::size_t n, std::vector<Edge> edges) {
  for (auto& [u, v] : edges) {
    if (u == v) throw ParameterError("self-loop on node " + std::to_string(u));
    if (u >= n || v >= n) {
      throw ParameterError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                           ") out of range for " + std::to_string(n) + " nodes");
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw ParameterError("duplicate edge (" + std::to_string(dup->first) + "," +
                         std::to_string(dup->second) + ")");
  }

  std::vector<std::size_t> deg(n, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    adjacency_[fill[u]++] = v;
    adjacency_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
  }
  edges_ = std::move(edges);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::directed_index(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  return offsets_[u] + static_cast<std::size_t>(it - nb.begin());
}

std::vector<std::size_t> Graph::bfs_distances(NodeId src) const {
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(node_count(), kInf);
  std::deque<NodeId> frontier{src};
  dist[src] = 0;
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop_front();
    for (NodeId w : neighbors(u)) {
      if (dist[w] == kInf) {
        dist[w] = dist[u] + 1;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

bool Graph::is_connected() const {
  if (node_count() == 0) return true;
  auto dist = bfs_distances(0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t d) {
    return d == std::numeric_limits<std::size_t>::max();
  });
}

VertexSet::VertexSet(std::size_t n, std::initializer_list<NodeId> members)
    : in_(n, false) {
  for (NodeId v : members) insert(v);
}

int boundary_indicator(NodeId v, const VertexSet& part, const Graph& g) {
  if (part.contains(v)) return 0;
  for (NodeId w : g.neighbors(v)) {
    if (part.contains(w)) return 1;
  }
  return 0;
}

std::size_t external_neighbors(NodeId v, const VertexSet& part, const Graph& g) {
  std::size_t count = 0;
  for (NodeId w : g.neighbors(v)) {
    if (!part.contains(w)) ++count;
  }
  return count;
}

namespace {

bool parse_id(const std::string& token, std::uint64_t& out) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    return false;
  }
  try {
    out = std::stoull(token);
  } catch (const std::exception&) {
    return false;
  }
  return out <= std::numeric_limits<NodeId>::max();
}

}  // namespace

Graph parse_edgelist(std::istream& in) {
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  std::optional<std::size_t> declared_n;
  std::size_t max_id_plus_one = 0;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      std::istringstream comment(line.substr(hash + 1));
      std::string key;
      std::uint64_t value = 0;
      std::string value_token, extra;
      if (comment >> key && key == "nodes" && comment >> value_token &&
          !(comment >> extra)) {
        if (!parse_id(value_token, value)) throw ParseError("bad node count", lineno);
        declared_n = value;
      }
      line.resize(hash);
    }
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra)) {
      throw ParseError("expected exactly two node ids", lineno);
    }
    std::uint64_t u = 0, v = 0;
    if (!parse_id(a, u) || !parse_id(b, v)) throw ParseError("invalid node id", lineno);
    if (u == v) throw ParseError("self-loop on node " + a, lineno);
    edges.emplace_back(static_cast<NodeId>(std::min(u, v)),
                       static_cast<NodeId>(std::max(u, v)));
    edge_lines.push_back(lineno);
    max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::max(u, v) + 1);
  }

  const std::size_t n = declared_n.value_or(max_id_plus_one);
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return edges[x] < edges[y]; });
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& [u, v] = edges[order[i]];
    if (v >= n) {
      throw ParseError("node id " + std::to_string(v) + " out of range (nodes " +
                           std::to_string(n) + ")",
                       edge_lines[order[i]]);
    }
    if (i > 0 && edges[order[i - 1]] == edges[order[i]]) {
      throw ParseError("duplicate edge " + std::to_string(u) + " " + std::to_string(v),
                       edge_lines[order[i]]);
    }
  }
  return Graph(n, std::move(edges));
}

Graph load_edgelist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return parse_edgelist(in);
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path.string());
  }
}

void write_edgelist(std::ostream& out, const Graph& g,
                    const std::vector<std::string>& comments) {
  out << "# nodes " << g.node_count() << '\n';
  for (const auto& c : comments) out << "# " << c << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void save_edgelist(const Graph& g, const std::filesystem::path& path,
                   const std::vector<std::string>& comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_edgelist(out, g, comments);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace bgpsim
