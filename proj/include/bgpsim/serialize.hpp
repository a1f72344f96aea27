#pragma once

// Structured documents (JSON) and flat CSV exports for traces, weights,
// partitions and reports.
//
// Every document carries a "schema" tag ("bgpsim.trace/1",
// "bgpsim.partition/1", "bgpsim.weights/1", "bgpsim.analysis/1",
// "bgpsim.report/1"), the digest of the graph it refers to, and a
// "config_digest" of the stage configuration that produced it. Keys are
// emitted in sorted order so identical inputs give byte-identical files.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "bgpsim/analysis.hpp"
#include "bgpsim/bgp.hpp"
#include "bgpsim/graph.hpp"
#include "bgpsim/partition.hpp"

namespace bgpsim {

using Json = nlohmann::json;

struct TraceMeta {
  int scenario = 1;
  Tick mrai = 0;
  std::uint64_t seed = 0;
  std::string session_order = "canonical";
  std::string graph_digest;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::uint64_t events = 0;
  Tick final_clock = 0;
  std::string tables_digest;
  std::string config_digest;
};

// Trace document:
//   {schema, scenario, mrai, seed, session_order, config_digest,
//    graph: {digest, nodes, edges},
//    run: {events, final_clock, tables_digest},
//    totals: {updates, entries, avg_entries_per_update},
//    me: [count per node],
//    edges: [{from, to, updates, entries}, ...] every directed edge, sorted}
Json trace_to_json(const Graph& g, const TraceStats& trace, const TraceMeta& meta);

struct TraceDocument {
  TraceMeta meta;
  TraceStats stats;
};

// Rebuilds the counters against `g`. Throws ConsistencyError when the
// document's graph digest differs or its counts violate the trace invariants.
TraceDocument trace_from_json(const Json& doc, const Graph& g);

// Digest identifying a trace document (SHA-256 of its compact dump).
std::string document_digest(const Json& doc);

// Columns: kind,from,to,updates,entries. Node rows have kind "node", to
// empty, and the ME count in entries; the last row holds the totals.
std::string trace_csv(const Graph& g, const TraceStats& trace);

struct PartitionMeta {
  Objective objective = Objective::kA;
  std::string method;  // "exact" | "heuristic"
  double cost = 0;
  std::optional<double> unconstrained_cost;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  std::string graph_digest;
  std::string weights_source;  // "trace" | "weights-file" | "unit"
  std::string weights_digest;
  std::optional<int> scenario;  // scenario of the source trace
  std::string config_digest;
};

// Partition document: {schema, objective, epsilon, method, cost,
// unconstrained_cost?, seed, restarts, sizes: [n0, n1], sides: [...],
// graph: {digest, nodes}, weights: {source, digest, scenario?},
// config_digest}
Json partition_to_json(const Bipartition& bp, const PartitionMeta& meta);
std::pair<Bipartition, PartitionMeta> partition_from_json(const Json& doc);
std::string partition_csv(const Bipartition& bp);  // node,side

// Weights document: {schema, vertices: [w...], edges: [[u, v, w], ...]}.
Json weights_to_json(const Graph& g, const WeightSpec& w);
WeightSpec weights_from_json(const Json& doc, const Graph& g);

Json overhead_to_json(const OverheadReport& r);
std::string overhead_csv(const OverheadReport& r);  // metric,value

Json table_to_json(const UpdateTable& t);
std::string table_csv(const UpdateTable& t);  // scenario,row,<size>...

Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& content);
// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& doc);

}  // namespace bgpsim
