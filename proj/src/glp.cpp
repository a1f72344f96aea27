#include "bgpsim/glp.hpp"

#include <cmath>
#include <unordered_set>
#include <vector>

#include "bgpsim/errors.hpp"
#include "bgpsim/rng.hpp"

namespace bgpsim {

namespace {

constexpr int kMaxDraws = 256;

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

class Growth {
 public:
  Growth(double beta, Rng& rng) : beta_(beta), rng_(rng) {
    for (NodeId v = 0; v < 3; ++v) degree_.push_back(0);
    add_edge(0, 1);
    add_edge(1, 2);
    add_edge(0, 2);
  }

  std::size_t nodes() const { return degree_.size(); }
  std::size_t edges() const { return edges_.size(); }
  bool saturated() const { return edges() == nodes() * (nodes() - 1) / 2; }

  bool has_edge(NodeId u, NodeId v) const { return keys_.count(edge_key(u, v)) > 0; }

  void add_edge(NodeId u, NodeId v) {
    keys_.insert(edge_key(u, v));
    edges_.emplace_back(u, v);
    endpoints_.push_back(u);
    endpoints_.push_back(v);
    ++degree_[u];
    ++degree_[v];
  }

  NodeId add_node() {
    degree_.push_back(0);
    return static_cast<NodeId>(degree_.size() - 1);
  }

  // Draws an existing node with probability (degree - beta) / sum.
  //
  // beta > 0: draw proportional to degree via a random edge endpoint, accept
  // with probability (d - beta) / d. beta <= 0: the weight splits into a
  // degree part (2m) and a uniform part (-beta * nodes); pick the part, then
  // draw within it. Only nodes with degree >= 1 are eligible.
  NodeId preferential(std::size_t eligible) {
    if (beta_ > 0) {
      for (;;) {
        NodeId v = endpoints_[rng_.uniform_index(endpoints_.size())];
        if (v >= eligible) continue;
        double d = static_cast<double>(degree_[v]);
        if (rng_.uniform01() * d < d - beta_) return v;
      }
    }
    for (;;) {
      double degree_mass = static_cast<double>(endpoints_.size());
      double uniform_mass = -beta_ * static_cast<double>(eligible);
      NodeId v;
      if (rng_.uniform01() * (degree_mass + uniform_mass) < degree_mass) {
        v = endpoints_[rng_.uniform_index(endpoints_.size())];
      } else {
        v = static_cast<NodeId>(rng_.uniform_index(eligible));
      }
      if (v < eligible) return v;
    }
  }

  Graph finish() { return Graph(nodes(), std::move(edges_)); }

 private:
  double beta_;
  Rng& rng_;
  std::vector<std::size_t> degree_;
  std::vector<NodeId> endpoints_;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> keys_;
};

}  // namespace

void validate(const GlpParams& params) {
  if (params.n < 3) throw ParameterError("GLP requires n >= 3");
  if (!std::isfinite(params.p) || params.p < 0 || params.p >= 1) {
    throw ParameterError("GLP requires 0 <= p < 1");
  }
  if (!std::isfinite(params.beta) || params.beta >= 1) {
    throw ParameterError("GLP requires beta < 1");
  }
  if (!std::isfinite(params.m_mean) || params.m_mean < 1) {
    throw ParameterError("GLP requires m_mean >= 1");
  }
}

Graph glp_generate(const GlpParams& params) {
  validate(params);
  Rng rng(params.seed);
  Growth g(params.beta, rng);

  const double m_floor = std::floor(params.m_mean);
  const double m_frac = params.m_mean - m_floor;

  while (g.nodes() < params.n) {
    std::size_t m = static_cast<std::size_t>(m_floor) + (rng.bernoulli(m_frac) ? 1 : 0);
    if (rng.bernoulli(params.p)) {
      const std::size_t eligible = g.nodes();
      for (std::size_t k = 0; k < m && !g.saturated(); ++k) {
        for (int draw = 0; draw < kMaxDraws; ++draw) {
          NodeId u = g.preferential(eligible);
          NodeId v = g.preferential(eligible);
          if (u != v && !g.has_edge(u, v)) {
            g.add_edge(u, v);
            break;
          }
        }
      }
    } else {
      const std::size_t eligible = g.nodes();
      m = std::min(m, eligible);
      NodeId fresh = g.add_node();
      std::size_t placed = 0;
      for (int draw = 0; placed < m && draw < kMaxDraws * static_cast<int>(m); ++draw) {
        NodeId target = g.preferential(eligible);
        if (!g.has_edge(fresh, target)) {
          g.add_edge(fresh, target);
          ++placed;
        }
      }
    }
  }
  return g.finish();
}

}  // namespace bgpsim
