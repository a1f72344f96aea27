#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "bgpsim/digest.hpp"
#include "bgpsim/errors.hpp"
#include "bgpsim/glp.hpp"
#include "bgpsim/serialize.hpp"

using namespace bgpsim;

namespace {

struct Fixture {
  Graph g;
  ScenarioResult res;
  TraceMeta meta;
};

Fixture fixture(std::size_t n = 40) {
  GlpParams p;
  p.n = n;
  p.seed = 2;
  Fixture f{glp_generate(p), {}, {}};
  ScenarioConfig cfg;
  f.res = run_scenario(f.g, cfg);
  f.meta.graph_digest = graph_digest(f.g);
  f.meta.nodes = f.g.node_count();
  f.meta.edges = f.g.edge_count();
  f.meta.events = f.res.events;
  f.meta.tables_digest = tables_digest(f.res.routers);
  return f;
}

}  // namespace

TEST_CASE("sha256 digests") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const Graph a(3, {{0, 1}, {1, 2}});
  const Graph b(3, {{1, 2}, {0, 1}});
  const Graph c(4, {{0, 1}, {1, 2}});
  CHECK(graph_digest(a) == graph_digest(b));
  CHECK(graph_digest(a) != graph_digest(c));
}

TEST_CASE("trace document round trip") {
  const auto f = fixture();
  const Json doc = trace_to_json(f.g, f.res.trace, f.meta);
  CHECK(doc["schema"] == "bgpsim.trace/1");
  CHECK(doc["totals"]["entries"] == f.res.trace.total_entries);
  CHECK(doc["edges"].size() == f.g.directed_count());

  const auto back = trace_from_json(Json::parse(doc.dump()), f.g);
  CHECK(back.stats == f.res.trace);
  CHECK(back.meta.tables_digest == f.meta.tables_digest);
  CHECK(back.meta.events == f.meta.events);
  CHECK(trace_to_json(f.g, back.stats, back.meta).dump() == doc.dump());
  CHECK(document_digest(doc) == document_digest(Json::parse(doc.dump(2))));
}

TEST_CASE("trace documents are checked against the graph") {
  const auto f = fixture();
  const Json doc = trace_to_json(f.g, f.res.trace, f.meta);
  GlpParams p;
  p.n = 40;
  p.seed = 3;
  CHECK_THROWS_AS(trace_from_json(doc, glp_generate(p)), ConsistencyError);

  Json bad = doc;
  bad["totals"]["entries"] = f.res.trace.total_entries + 1;
  CHECK_THROWS_AS(trace_from_json(bad, f.g), ConsistencyError);

  Json fewer = doc;
  fewer["edges"][0]["updates"] = fewer["edges"][0]["entries"].get<std::uint64_t>() + 1;
  CHECK_THROWS_AS(trace_from_json(fewer, f.g), ConsistencyError);

  Json wrong_schema = doc;
  wrong_schema["schema"] = "bgpsim.partition/1";
  CHECK_THROWS_AS(trace_from_json(wrong_schema, f.g), IoError);

  Json missing = doc;
  missing.erase("me");
  CHECK_THROWS_AS(trace_from_json(missing, f.g), IoError);
}

TEST_CASE("trace csv") {
  const Graph k2(2, {{0, 1}});
  ScenarioConfig cfg;
  const auto t = run_scenario(k2, cfg).trace;
  CHECK(trace_csv(k2, t) ==
        "kind,from,to,updates,entries\n"
        "node,0,,,2\n"
        "node,1,,,2\n"
        "edge,0,1,2,2\n"
        "edge,1,0,2,2\n"
        "total,,,4,4\n");
}

TEST_CASE("partition document round trip") {
  Bipartition bp{{0, 1, 1, 0, 1}, 0.2};
  PartitionMeta meta;
  meta.objective = Objective::kB;
  meta.method = "exact";
  meta.cost = 7;
  meta.unconstrained_cost = 0;
  meta.graph_digest = "abc";
  meta.weights_source = "unit";
  meta.scenario = 2;
  const Json doc = partition_to_json(bp, meta);
  CHECK(doc["sizes"] == Json::array({2, 3}));
  const auto [bp2, meta2] = partition_from_json(Json::parse(doc.dump()));
  CHECK(bp2 == bp);
  CHECK(meta2.objective == Objective::kB);
  CHECK(meta2.cost == 7);
  CHECK(meta2.scenario == 2);
  CHECK(meta2.unconstrained_cost == 0);
  CHECK(partition_to_json(bp2, meta2) == doc);
  CHECK(partition_csv(bp) == "node,side\n0,0\n1,1\n2,1\n3,0\n4,1\n");

  Json bad = doc;
  bad["sides"][0] = 2;
  CHECK_THROWS_AS(partition_from_json(bad), IoError);
}

TEST_CASE("weights document round trip") {
  const Graph p3(3, {{0, 1}, {1, 2}});
  WeightSpec w{{1.5, 2}, {3, 4, 0}};
  const Json doc = weights_to_json(p3, w);
  CHECK(weights_from_json(doc, p3) == w);
  const Graph other(3, {{0, 1}, {0, 2}});
  CHECK_THROWS_AS(weights_from_json(doc, other), ConsistencyError);
}

TEST_CASE("report exports") {
  const auto r = analyze_override(10.5e6, 5000);
  const Json j = overhead_to_json(r);
  CHECK(j.dump() == overhead_to_json(analyze_override(10.5e6, 5000)).dump());
  const auto csv = overhead_csv(r);
  CHECK(csv.find("overhead_seconds[override],2730") != std::string::npos);
  CHECK(csv.find("proportional@100000],54600") != std::string::npos);
  CHECK(csv.find("comm_entries_a") == std::string::npos);

  const std::vector<RunSummary> runs{{1, 100, 50, 10, 5}, {2, 100, 90, std::nullopt, 8}};
  const auto t = build_update_table(runs);
  CHECK(table_csv(t) ==
        "scenario,row,100\n"
        "1,No partition,50\n"
        "1,Sol A on bipartition,10\n"
        "1,Sol B on bipartition,5\n"
        "2,No partition,90\n"
        "2,Sol A on bipartition,\n"
        "2,Sol B on bipartition,8\n");
  CHECK(table_to_json(t)["rows"][4]["cells"][0].is_null());
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "bgpsim_serialize_test";
  std::filesystem::remove_all(dir);
  const Json doc{{"b", 1}, {"a", {1, 2}}};
  write_json(dir / "nested" / "x.json", doc);
  CHECK(read_json(dir / "nested" / "x.json") == doc);
  std::ifstream in(dir / "nested" / "x.json");
  const std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(text.back() == '\n');
  write_text(dir / "bad.json", "{not json");
  CHECK_THROWS_AS(read_json(dir / "bad.json"), IoError);
  CHECK_THROWS_AS(read_json(dir / "absent.json"), IoError);
  std::filesystem::remove_all(dir);
}
