#include <doctest.h>

#include <numeric>

#include "bgpsim/bgp.hpp"
#include "bgpsim/digest.hpp"
#include "bgpsim/errors.hpp"
#include "bgpsim/glp.hpp"
#include "oracles.hpp"

using namespace bgpsim;

namespace {

std::vector<Router> fresh_routers(const Graph& g) {
  std::vector<Router> rs;
  for (NodeId v = 0; v < g.node_count(); ++v) rs.emplace_back(v, g.neighbors(v), g.node_count());
  return rs;
}

ScenarioResult run(const Graph& g, int scenario, std::uint64_t seed = 1) {
  ScenarioConfig cfg;
  cfg.scenario = scenario;
  cfg.seed = seed;
  return run_scenario(g, cfg);
}

Graph glp(std::size_t n, std::uint64_t seed) {
  GlpParams p;
  p.n = n;
  p.seed = seed;
  return glp_generate(p);
}

void check_against_reference(const Graph& g, int scenario) {
  const auto res = run(g, scenario);
  const auto ref = oracle::reference_run(g.edges(), g.node_count(), scenario);
  CHECK(res.trace.total_entries == ref.total_entries);
  CHECK(res.trace.total_updates == ref.total_updates);
  CHECK(res.trace.me == ref.me);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      const auto i = g.directed_index(u, v);
      const auto key = std::pair{u, v};
      const auto e = ref.entries.count(key) ? ref.entries.at(key) : 0;
      const auto m = ref.updates.count(key) ? ref.updates.at(key) : 0;
      CHECK(res.trace.edge_entries[i] == e);
      CHECK(res.trace.edge_updates[i] == m);
    }
    for (NodeId d = 0; d < g.node_count(); ++d) {
      REQUIRE(res.routers[u].best(d) != nullptr);
      CHECK(*res.routers[u].best(d) == ref.best[u].at(d));
    }
  }
}

}  // namespace

TEST_CASE("decision rule") {
  const std::vector<Path> one{{3, 5}};
  CHECK(decision(5, one)->path == Path{3, 5});

  const std::vector<Path> lengths{{1, 2, 9}, {4, 9}};
  CHECK(decision(9, lengths)->path == Path{4, 9});

  const std::vector<Path> hops{{7, 9}, {4, 9}};
  CHECK(decision(9, hops)->path == Path{4, 9});

  const std::vector<Path> lex{{4, 8, 9}, {4, 6, 9}};
  CHECK(decision(9, lex)->path == Path{4, 6, 9});

  CHECK_FALSE(decision(2, std::vector<Path>{}).has_value());
  CHECK_FALSE(decision(2, std::vector<Path>{{}, {}}).has_value());

  const Path self{2};
  const std::vector<Path> others{{1, 2}};
  CHECK(decision(2, others, &self)->path == Path{2});

  CHECK(preferred({4, 9}, {7, 9}));
  CHECK_FALSE(preferred({7, 9}, {4, 9}));
  CHECK(preferred({1, 9}, {0, 3, 9}));
}

TEST_CASE("process_update loop discard and learning") {
  const Graph k2(2, {{0, 1}});
  auto rs = fresh_routers(k2);
  Outbox out;
  rs[0].originate(0, 0, out);
  rs[1].originate(0, 0, out);
  CHECK(out.messages.empty());  // no session yet
  const auto msgs = establish_session(0, 1, rs, k2);
  REQUIRE(msgs.size() == 2);
  CHECK(msgs[0].entries.size() == 1);
  CHECK(msgs[1].entries.size() == 1);

  // router 1 learns dest 0 and advertises [1, 0] back
  Outbox o1;
  rs[1].process_update(msgs[0], 1, 0, o1);
  REQUIRE(rs[1].best(0) != nullptr);
  CHECK(*rs[1].best(0) == Path{0});
  REQUIRE(o1.messages.size() == 1);
  CHECK(o1.messages[0].receiver == 0);
  REQUIRE(o1.messages[0].entries.size() == 1);
  CHECK(o1.messages[0].entries[0].path == Path{1, 0});
  CHECK(rs[1].modifications() == 2);

  // router 0 drops it: own id in path
  const auto before = rs[0].best_table();
  Outbox o0;
  rs[0].process_update(o1.messages[0], 2, 0, o0);
  CHECK(o0.messages.empty());
  CHECK(rs[0].best_table() == before);
  CHECK(rs[0].ribin(1, 0) == nullptr);
  CHECK(rs[0].modifications() == 1);
}

TEST_CASE("worse path updates ribin only") {
  // 0 peers with 1 and 2; dest 3 learned at length 2 then offered at 3
  Graph g(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  Router r(0, g.neighbors(0), 4);
  r.open_session(1);
  r.open_session(2);
  Outbox out;
  r.process_update({1, 0, {{3, {1, 3}}}}, 1, 0, out);
  const auto mods = r.modifications();
  out.messages.clear();
  r.process_update({2, 0, {{3, {2, 1, 3}}}}, 2, 0, out);
  CHECK(out.messages.empty());
  CHECK(r.modifications() == mods);
  CHECK(*r.best(3) == Path{1, 3});
  REQUIRE(r.ribin(2, 3) != nullptr);
  CHECK(*r.ribin(2, 3) == Path{2, 1, 3});

  // the best's peer now sends something worse: fall back to the other peer
  r.process_update({1, 0, {{3, {1, 2, 0, 3}}}}, 3, 0, out);  // loop, dropped
  CHECK(*r.best(3) == Path{1, 3});
  r.process_update({1, 0, {{3, {1, 2, 2, 2, 3}}}}, 4, 0, out);
  CHECK(*r.best(3) == Path{2, 1, 3});
  CHECK(r.modifications() == mods + 1);
}

TEST_CASE("malformed and session errors") {
  const Graph p3(3, {{0, 1}, {1, 2}});
  auto rs = fresh_routers(p3);
  Outbox out;
  CHECK_THROWS_AS(rs[1].process_update({0, 1, {{0, {0}}}}, 0, 0, out), SessionError);
  establish_session(0, 1, rs, p3);
  CHECK_THROWS_AS(rs[1].process_update({0, 1, {{0, {}}}}, 0, 0, out), MalformedUpdate);
  CHECK_THROWS_AS(rs[1].process_update({0, 1, {}}, 0, 0, out), MalformedUpdate);
  CHECK_THROWS_AS(rs[1].process_update({0, 2, {{0, {0}}}}, 0, 0, out), MalformedUpdate);
  CHECK_THROWS_AS(establish_session(0, 1, rs, p3), SessionError);
  CHECK_THROWS_AS(establish_session(0, 2, rs, p3), SessionError);
}

TEST_CASE("session bootstrap sends full tables") {
  const Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
  auto rs = fresh_routers(g);
  Outbox out;
  for (auto& r : rs) r.originate(0, 0, out);
  auto first = establish_session(0, 3, rs, g);
  REQUIRE(first.size() == 2);
  CHECK(first[0].entries.size() == 1);
  CHECK(first[1].entries.size() == 1);
  rs[0].process_update(first[1], 1, 0, out);
  auto m = establish_session(0, 1, rs, g);
  REQUIRE(m.size() == 2);
  CHECK(m[0].sender == 0);
  CHECK(m[0].entries.size() == 2);
  establish_session(3, 4, rs, g);
  rs[3].process_update({4, 3, {{4, {4}}}}, 2, 0, out);
  rs[0].process_update({3, 0, {{4, {3, 4}}}}, 3, 0, out);
  auto m2 = establish_session(0, 2, rs, g);
  CHECK(m2[0].entries.size() == 3);
}

TEST_CASE("mrai batching") {
  const Graph g(5, {{0, 1}, {0, 2}});
  Router r(0, g.neighbors(0), 5);
  r.open_session(1);
  r.open_session(2);
  Outbox out;
  r.originate(0, 10, out);
  CHECK(out.messages.size() == 2);  // first advertisement goes out at once
  out = {};
  r.process_update({1, 0, {{1, {1}}, {3, {1, 3}}, {4, {1, 4}}}}, 1, 10, out);
  CHECK(out.messages.empty());
  CHECK(out.timers.size() == 2);
  CHECK(r.pending(2) == 3);
  auto batch = r.mrai_flush(2, 10, 10);
  REQUIRE(batch.has_value());
  CHECK(batch->entries.size() == 3);
  CHECK(r.pending(2) == 0);
  CHECK_FALSE(r.mrai_flush(2, 20, 10).has_value());

  Router z(0, g.neighbors(0), 5);
  z.open_session(1);
  z.open_session(2);
  Outbox zo;
  z.originate(0, 0, zo);
  z.process_update({1, 0, {{1, {1}}, {3, {1, 3}}, {4, {1, 4}}}}, 1, 0, zo);
  CHECK(zo.messages.size() == 8);
  for (const auto& m : zo.messages) CHECK(m.entries.size() == 1);
}

TEST_CASE("two-router trace") {
  const Graph k2(2, {{0, 1}});
  for (int s : {1, 2, 3}) {
    const auto res = run(k2, s);
    CHECK(res.trace.total_updates == 4);
    CHECK(res.trace.total_entries == 4);
    CHECK(res.trace.me == std::vector<std::uint64_t>{2, 2});
    CHECK(res.trace.edge_entries == std::vector<std::uint64_t>{2, 2});
  }
}

TEST_CASE("path graph converges to shortest paths") {
  const Graph p3(3, {{0, 1}, {1, 2}});
  const auto res = run(p3, 1);
  for (NodeId u = 0; u < 3; ++u) {
    const auto d = p3.bfs_distances(u);
    for (NodeId v = 0; v < 3; ++v) {
      REQUIRE(res.routers[u].best(v) != nullptr);
      CHECK(res.routers[u].best(v)->size() == (u == v ? 1 : d[v]));
    }
  }
  CHECK(*res.routers[0].best(2) == Path{1, 2});
}

TEST_CASE("scenarios 1 and 3 match the reference simulator exactly") {
  const std::vector<Graph> graphs = {
      Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}),
      Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {3, 4}}),
      glp(30, 1), glp(60, 2), glp(80, 3)};
  for (const auto& g : graphs) {
    check_against_reference(g, 1);
    check_against_reference(g, 3);
  }
}

TEST_CASE("fixed point is order independent") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Graph g = glp(60, seed);
    const auto s1 = run(g, 1);
    const auto s3 = run(g, 3);
    CHECK(same_tables(s1.routers, s3.routers));
    CHECK(tables_digest(s1.routers) == tables_digest(s3.routers));
    for (std::uint64_t rs = 1; rs <= 3; ++rs) {
      const auto s2 = run(g, 2, rs);
      CHECK(same_tables(s1.routers, s2.routers));
      CHECK(s2.trace.total_entries >= s1.trace.total_entries);
    }
  }
}

TEST_CASE("trace accounting identities") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = glp(70, seed);
    for (int s : {1, 2, 3}) {
      const auto res = run(g, s, seed);
      const auto& t = res.trace;
      CHECK(std::accumulate(t.edge_entries.begin(), t.edge_entries.end(), std::uint64_t{0}) ==
            t.total_entries);
      CHECK(std::accumulate(t.edge_updates.begin(), t.edge_updates.end(), std::uint64_t{0}) ==
            t.total_updates);
      CHECK(t.total_entries >= t.total_updates);
      for (NodeId v = 0; v < g.node_count(); ++v) CHECK(t.me[v] == res.routers[v].modifications());
      if (s == 1) {
        std::uint64_t expect = 0;
        for (NodeId v = 0; v < g.node_count(); ++v) expect += t.me[v] * g.degree(v);
        CHECK(t.total_entries == expect);
        CHECK(t.total_entries == t.total_updates);  // one entry per update
      }
    }
  }
}

TEST_CASE("scenario runs are deterministic") {
  const Graph g = glp(80, 9);
  for (int s : {1, 2, 3}) {
    const auto a = run(g, s, 17);
    const auto b = run(g, s, 17);
    CHECK(a.trace == b.trace);
    CHECK(a.events == b.events);
    CHECK(a.final_clock == b.final_clock);
  }
  CHECK_FALSE(run(g, 2, 17).trace == run(g, 2, 18).trace);
}

TEST_CASE("scenario configuration errors") {
  const Graph g = glp(20, 1);
  ScenarioConfig bad;
  bad.scenario = 4;
  CHECK_THROWS_AS(run_scenario(g, bad), ParameterError);
  const Graph split(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(run(split, 1), ConsistencyError);
  ScenarioConfig capped;
  capped.event_cap = 10;
  CHECK_THROWS_AS(run_scenario(g, capped), DivergenceError);
}

TEST_CASE("mrai batching keeps the fixed point and reduces updates") {
  const Graph g = glp(60, 4);
  const auto base = run(g, 1);
  for (Tick mrai : {Tick{1}, Tick{3}, Tick{30}}) {
    ScenarioConfig cfg;
    cfg.mrai = mrai;
    const auto res = run_scenario(g, cfg);
    CHECK(same_tables(base.routers, res.routers));
    CHECK(res.trace.total_updates <= base.trace.total_updates);
    CHECK(res.trace.avg_entries_per_update() >= 1.0);
  }
}
