#include <doctest.h>

#include "bgpsim/bgp.hpp"
#include "bgpsim/errors.hpp"
#include "bgpsim/glp.hpp"
#include "bgpsim/partition.hpp"
#include "bgpsim/rng.hpp"
#include "oracles.hpp"

using namespace bgpsim;

namespace {

struct Instance {
  Graph g;
  WeightSpec w;
};

Instance random_instance(std::size_t n, double density, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.bernoulli(density)) edges.push_back({u, v});
    }
  }
  Instance inst{Graph(n, edges), {}};
  for (std::size_t i = 0; i < inst.g.edge_count(); ++i) {
    inst.w.edge_w.push_back(static_cast<double>(rng.uniform_index(10)));
  }
  for (std::size_t v = 0; v < n; ++v) {
    inst.w.vertex_w.push_back(static_cast<double>(1 + rng.uniform_index(9)));
  }
  return inst;
}

Bipartition split(std::vector<std::uint8_t> side, double eps = kDefaultEpsilon) {
  return Bipartition{std::move(side), eps};
}

// Lexicographically smallest optimal side vector, by enumeration.
std::vector<std::uint8_t> brute_argmin(const Instance& in, Objective o, double eps) {
  const std::size_t n = in.g.node_count();
  const auto [lo, hi] = balanced_range(n, eps);
  std::optional<double> best;
  std::vector<std::uint8_t> arg;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::vector<std::uint8_t> side(n);
    std::size_t zeros = 0;
    for (std::size_t v = 0; v < n; ++v) {
      side[v] = (mask >> (n - 1 - v)) & 1;
      zeros += side[v] == 0;
    }
    if (zeros < lo || zeros > hi) continue;
    const double c = evaluate(o, in.g, in.w, split(side, eps));
    if (!best || c < *best) {  // masks ascend in lexicographic order
      best = c;
      arg = side;
    }
  }
  return arg;
}

}  // namespace

TEST_CASE("balance range") {
  CHECK(balanced_range(4, 0.0) == std::pair<std::size_t, std::size_t>{2, 2});
  CHECK(balanced_range(10, 0.1) == std::pair<std::size_t, std::size_t>{5, 5});
  CHECK(balanced_range(11, 0.1) == std::pair<std::size_t, std::size_t>{5, 6});
  CHECK(balanced_range(20, 0.1) == std::pair<std::size_t, std::size_t>{9, 11});
  CHECK(balanced_range(2, 1.0) == std::pair<std::size_t, std::size_t>{1, 1});
  const auto [lo, hi] = balanced_range(5, 0.0);
  CHECK(lo > hi);
  for (std::size_t n = 2; n <= 40; ++n) {
    for (double eps : {0.0, 0.05, 0.1, 0.25, 0.5}) {
      const auto [a, b] = balanced_range(n, eps);
      for (std::size_t n0 = 1; n0 < n; ++n0) {
        const double diff = std::abs(static_cast<double>(n) - 2.0 * static_cast<double>(n0));
        CHECK((n0 >= a && n0 <= b) == (diff <= eps * static_cast<double>(n) + 1e-9));
      }
    }
  }
}

TEST_CASE("objective examples") {
  const Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  const auto uk3 = WeightSpec::unit(k3);
  CHECK(objective_a(k3, uk3, split({0, 0, 0})) == 0);
  CHECK(objective_a(k3, uk3, split({0, 1, 1})) == 2);

  const Graph p4(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto up4 = WeightSpec::unit(p4);
  CHECK(objective_b(p4, up4, split({0, 0, 1, 1})) == 2);
  CHECK(objective_a(p4, up4, split({0, 0, 1, 1})) == 1);

  const Graph two(4, {{0, 1}, {2, 3}});
  CHECK(objective_b(two, WeightSpec::unit(two), split({0, 0, 1, 1})) == 0);
}

TEST_CASE("objectives equal brute-force recount") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto in = random_instance(12, 0.3, seed);
    Rng rng(seed + 100);
    std::vector<std::uint8_t> side(12);
    for (auto& s : side) s = static_cast<std::uint8_t>(rng.uniform_index(2));
    double a = 0, b = 0;
    for (std::size_t i = 0; i < in.g.edge_count(); ++i) {
      const auto [u, v] = in.g.edges()[i];
      if (side[u] != side[v]) a += in.w.edge_w[i];
    }
    for (NodeId v = 0; v < 12; ++v) {
      bool boundary = false;
      for (const auto& [x, y] : in.g.edges()) {
        if ((x == v || y == v) && side[x] != side[y]) boundary = true;
      }
      if (boundary) b += in.w.vertex_w[v];
    }
    CHECK(objective_a(in.g, in.w, split(side)) == a);
    CHECK(objective_b(in.g, in.w, split(side)) == b);

    // label swap invariance
    auto flipped = side;
    for (auto& s : flipped) s ^= 1;
    CHECK(objective_a(in.g, in.w, split(flipped)) == a);
    CHECK(objective_b(in.g, in.w, split(flipped)) == b);
  }
}

TEST_CASE("exact solver examples") {
  const Graph p2(2, {{0, 1}});
  CHECK(exact_bipartition(p2, WeightSpec::unit(p2), Objective::kA, 0.0).cost == 1);
  const Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto r = exact_bipartition(c4, WeightSpec::unit(c4), Objective::kA, 0.0);
  CHECK(r.cost == 2);
  CHECK(r.partition.side == std::vector<std::uint8_t>{0, 0, 1, 1});
  CHECK(r.unconstrained_cost == 2);
  const Graph p4(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(exact_bipartition(p4, WeightSpec::unit(p4), Objective::kB, 0.0).cost == 2);
}

TEST_CASE("exact solver matches enumeration") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto in = random_instance(seed % 2 ? 14 : 13, 0.25, seed);
    for (Objective o : {Objective::kA, Objective::kB}) {
      for (double eps : {0.0, 0.1, 0.3}) {
        const auto brute = oracle::brute_force_min(in.g.edges(), in.g.node_count(), in.w.edge_w,
                                                   in.w.vertex_w, o, eps);
        if (!brute) {
          CHECK_THROWS_AS(exact_bipartition(in.g, in.w, o, eps), InfeasibleError);
          continue;
        }
        const auto r = exact_bipartition(in.g, in.w, o, eps);
        CHECK(r.cost == *brute);
        CHECK(r.partition.balanced());
        CHECK(evaluate(o, in.g, in.w, r.partition) == r.cost);
        CHECK(r.unconstrained_cost <= r.cost);
      }
    }
  }
}

TEST_CASE("exact tie-break and scaling") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto in = random_instance(10, 0.35, seed * 7);
    for (Objective o : {Objective::kA, Objective::kB}) {
      const auto r = exact_bipartition(in.g, in.w, o, 0.2);
      CHECK(r.partition.side == brute_argmin(in, o, 0.2));
      auto scaled = in.w;
      for (auto& x : scaled.edge_w) x *= 2.5;
      for (auto& x : scaled.vertex_w) x *= 2.5;
      const auto s = exact_bipartition(in.g, scaled, o, 0.2);
      CHECK(s.cost == 2.5 * r.cost);
      CHECK(s.partition.side == r.partition.side);
    }
  }
}

TEST_CASE("exact solver errors") {
  const auto in = random_instance(30, 0.2, 3);
  CHECK_THROWS_AS(exact_bipartition(in.g, in.w, Objective::kA), SizeError);
  const Graph p5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK_THROWS_AS(exact_bipartition(p5, WeightSpec::unit(p5), Objective::kA, 0.0),
                  InfeasibleError);
  CHECK_NOTHROW(exact_bipartition(p5, WeightSpec::unit(p5), Objective::kA, 0.2));
  WeightSpec short_w = WeightSpec::unit(p5);
  short_w.edge_w.pop_back();
  CHECK_THROWS_AS(exact_bipartition(p5, short_w, Objective::kA), ConsistencyError);
  WeightSpec neg = WeightSpec::unit(p5);
  neg.vertex_w[2] = -1;
  CHECK_THROWS_AS(validate(neg, p5), ParameterError);
  CHECK_THROWS_AS(objective_from_string("C"), ParameterError);
  CHECK(objective_from_string("B") == Objective::kB);
  CHECK(to_string(Objective::kA) == "A");
}

TEST_CASE("heuristic is feasible, deterministic and never beats exact") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto in = random_instance(14, 0.25, seed + 500);
    for (Objective o : {Objective::kA, Objective::kB}) {
      HeuristicOptions opt;
      opt.seed = seed;
      const auto h = heuristic_bipartition(in.g, in.w, o, 0.1, opt);
      const auto e = exact_bipartition(in.g, in.w, o, 0.1);
      CHECK(h.partition.balanced());
      CHECK(h.cost >= e.cost);
      CHECK(h.cost == evaluate(o, in.g, in.w, h.partition));
      const auto again = heuristic_bipartition(in.g, in.w, o, 0.1, opt);
      CHECK(again.partition == h.partition);
      CHECK(again.best_restart == h.best_restart);
    }
  }
}

TEST_CASE("heuristic handles a large topology") {
  GlpParams p;
  p.n = 5000;
  p.seed = 1;
  const Graph g = glp_generate(p);
  const auto w = WeightSpec::unit(g);
  for (Objective o : {Objective::kA, Objective::kB}) {
    HeuristicOptions opt;
    opt.restarts = 2;
    const auto h = heuristic_bipartition(g, w, o, kDefaultEpsilon, opt);
    CHECK(h.partition.side.size() == 5000);
    CHECK(h.partition.balanced());
    CHECK(h.cost < static_cast<double>(o == Objective::kA ? g.edge_count() : 5000) / 2);
  }
  const Graph p7(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  CHECK_THROWS_AS(heuristic_bipartition(p7, WeightSpec::unit(p7), Objective::kA, 0.0),
                  InfeasibleError);
}

TEST_CASE("weights from traces") {
  const Graph k2(2, {{0, 1}});
  ScenarioConfig cfg;
  const auto k2w = weights_from_trace(run_scenario(k2, cfg).trace, k2);
  CHECK(k2w.edge_w == std::vector<double>{4});
  CHECK(k2w.vertex_w == std::vector<double>{2, 2});

  const auto zero = weights_from_trace(TraceStats(k2), k2);
  CHECK(zero.edge_w == std::vector<double>{0});
  CHECK(zero.vertex_w == std::vector<double>{0, 0});

  const Graph p3(3, {{0, 1}, {1, 2}});
  const auto p3w = weights_from_trace(run_scenario(p3, cfg).trace, p3);
  CHECK(p3w.vertex_w[1] >= p3w.vertex_w[0]);

  CHECK_THROWS_AS(weights_from_trace(TraceStats(p3), k2), ConsistencyError);
}
