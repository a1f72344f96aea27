#include "bgpsim/serialize.hpp"

#include <fstream>
#include <sstream>

#include "bgpsim/digest.hpp"
#include "bgpsim/errors.hpp"

namespace bgpsim {

namespace {

template <typename T>
T field(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw IoError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad field '") + key + "': " + e.what());
  }
}

void expect_schema(const Json& doc, const std::string& schema) {
  if (!doc.is_object() || field<std::string>(doc, "schema") != schema) {
    throw IoError("expected a " + schema + " document");
  }
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

Json extrapolation_json(const Extrapolation& e) {
  Json j{{"model", to_string(e.model)}, {"target_n", e.target_n}, {"value", e.value}};
  if (e.r_squared) j["r_squared"] = *e.r_squared;
  return j;
}

}  // namespace

Json trace_to_json(const Graph& g, const TraceStats& trace, const TraceMeta& meta) {
  Json edges = Json::array();
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nb = g.neighbors(u);
    const std::size_t base = g.directed_base(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      edges.push_back({{"from", u},
                       {"to", nb[i]},
                       {"updates", trace.edge_updates[base + i]},
                       {"entries", trace.edge_entries[base + i]}});
    }
  }
  return {{"schema", "bgpsim.trace/1"},
          {"scenario", meta.scenario},
          {"mrai", meta.mrai},
          {"seed", meta.seed},
          {"session_order", meta.session_order},
          {"config_digest", meta.config_digest},
          {"graph", {{"digest", meta.graph_digest}, {"nodes", meta.nodes}, {"edges", meta.edges}}},
          {"run",
           {{"events", meta.events},
            {"final_clock", meta.final_clock},
            {"tables_digest", meta.tables_digest}}},
          {"totals",
           {{"updates", trace.total_updates},
            {"entries", trace.total_entries},
            {"avg_entries_per_update", trace.avg_entries_per_update()}}},
          {"me", trace.me},
          {"edges", std::move(edges)}};
}

TraceDocument trace_from_json(const Json& doc, const Graph& g) {
  expect_schema(doc, "bgpsim.trace/1");
  TraceDocument out;
  auto& m = out.meta;
  m.scenario = field<int>(doc, "scenario");
  m.mrai = field<Tick>(doc, "mrai");
  m.seed = field<std::uint64_t>(doc, "seed");
  m.session_order = field<std::string>(doc, "session_order");
  m.config_digest = field<std::string>(doc, "config_digest");
  const Json graph = field<Json>(doc, "graph");
  m.graph_digest = field<std::string>(graph, "digest");
  m.nodes = field<std::size_t>(graph, "nodes");
  m.edges = field<std::size_t>(graph, "edges");
  const Json run = field<Json>(doc, "run");
  m.events = field<std::uint64_t>(run, "events");
  m.final_clock = field<Tick>(run, "final_clock");
  m.tables_digest = field<std::string>(run, "tables_digest");

  if (m.graph_digest != graph_digest(g)) {
    throw ConsistencyError("trace was produced on a different graph");
  }
  TraceStats& t = out.stats;
  t = TraceStats(g);
  t.me = field<std::vector<std::uint64_t>>(doc, "me");
  if (t.me.size() != g.node_count()) throw ConsistencyError("trace ME size mismatch");
  for (const auto& e : field<Json>(doc, "edges")) {
    const auto u = field<NodeId>(e, "from");
    const auto v = field<NodeId>(e, "to");
    if (!g.has_edge(u, v)) {
      throw ConsistencyError("trace edge " + std::to_string(u) + "->" + std::to_string(v) +
                             " is not in the graph");
    }
    const std::size_t idx = g.directed_index(u, v);
    t.edge_updates[idx] = field<std::uint64_t>(e, "updates");
    t.edge_entries[idx] = field<std::uint64_t>(e, "entries");
    if (t.edge_entries[idx] < t.edge_updates[idx]) {
      throw ConsistencyError("trace edge with fewer entries than updates");
    }
    t.total_updates += t.edge_updates[idx];
    t.total_entries += t.edge_entries[idx];
  }
  const Json totals = field<Json>(doc, "totals");
  if (field<std::uint64_t>(totals, "updates") != t.total_updates ||
      field<std::uint64_t>(totals, "entries") != t.total_entries) {
    throw ConsistencyError("trace totals disagree with per-edge counts");
  }
  return out;
}

std::string document_digest(const Json& doc) { return sha256_hex(doc.dump()); }

std::string trace_csv(const Graph& g, const TraceStats& trace) {
  std::ostringstream out;
  out << "kind,from,to,updates,entries\n";
  for (NodeId v = 0; v < g.node_count(); ++v) out << "node," << v << ",,," << trace.me[v] << '\n';
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nb = g.neighbors(u);
    const std::size_t base = g.directed_base(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      out << "edge," << u << ',' << nb[i] << ',' << trace.edge_updates[base + i] << ','
          << trace.edge_entries[base + i] << '\n';
    }
  }
  out << "total,,," << trace.total_updates << ',' << trace.total_entries << '\n';
  return out.str();
}

Json partition_to_json(const Bipartition& bp, const PartitionMeta& meta) {
  Json weights{{"source", meta.weights_source}, {"digest", meta.weights_digest}};
  if (meta.scenario) weights["scenario"] = *meta.scenario;
  Json doc{{"schema", "bgpsim.partition/1"},
           {"objective", to_string(meta.objective)},
           {"epsilon", bp.epsilon},
           {"method", meta.method},
           {"cost", meta.cost},
           {"seed", meta.seed},
           {"restarts", meta.restarts},
           {"sizes", {bp.size(0), bp.size(1)}},
           {"sides", bp.side},
           {"graph", {{"digest", meta.graph_digest}, {"nodes", bp.side.size()}}},
           {"weights", std::move(weights)},
           {"config_digest", meta.config_digest}};
  if (meta.unconstrained_cost) doc["unconstrained_cost"] = *meta.unconstrained_cost;
  return doc;
}

std::pair<Bipartition, PartitionMeta> partition_from_json(const Json& doc) {
  expect_schema(doc, "bgpsim.partition/1");
  Bipartition bp;
  PartitionMeta m;
  bp.epsilon = field<double>(doc, "epsilon");
  bp.side = field<std::vector<std::uint8_t>>(doc, "sides");
  for (auto s : bp.side) {
    if (s > 1) throw IoError("partition sides must be 0 or 1");
  }
  m.objective = objective_from_string(field<std::string>(doc, "objective"));
  m.method = field<std::string>(doc, "method");
  m.cost = field<double>(doc, "cost");
  if (doc.contains("unconstrained_cost")) m.unconstrained_cost = field<double>(doc, "unconstrained_cost");
  m.seed = field<std::uint64_t>(doc, "seed");
  m.restarts = field<std::size_t>(doc, "restarts");
  const Json graph = field<Json>(doc, "graph");
  m.graph_digest = field<std::string>(graph, "digest");
  if (field<std::size_t>(graph, "nodes") != bp.side.size()) {
    throw ConsistencyError("partition node count disagrees with its side table");
  }
  const Json weights = field<Json>(doc, "weights");
  m.weights_source = field<std::string>(weights, "source");
  m.weights_digest = field<std::string>(weights, "digest");
  if (weights.contains("scenario")) m.scenario = field<int>(weights, "scenario");
  m.config_digest = field<std::string>(doc, "config_digest");
  return {std::move(bp), std::move(m)};
}

std::string partition_csv(const Bipartition& bp) {
  std::ostringstream out;
  out << "node,side\n";
  for (std::size_t v = 0; v < bp.side.size(); ++v) out << v << ',' << int(bp.side[v]) << '\n';
  return out.str();
}

Json weights_to_json(const Graph& g, const WeightSpec& w) {
  Json edges = Json::array();
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    edges.push_back({g.edges()[i].first, g.edges()[i].second, w.edge_w[i]});
  }
  return {{"schema", "bgpsim.weights/1"}, {"vertices", w.vertex_w}, {"edges", std::move(edges)}};
}

WeightSpec weights_from_json(const Json& doc, const Graph& g) {
  expect_schema(doc, "bgpsim.weights/1");
  WeightSpec w;
  w.vertex_w = field<std::vector<double>>(doc, "vertices");
  w.edge_w.assign(g.edge_count(), -1.0);
  for (const auto& e : field<Json>(doc, "edges")) {
    if (!e.is_array() || e.size() != 3) throw IoError("weights edge must be [u, v, w]");
    NodeId u = e[0].get<NodeId>(), v = e[1].get<NodeId>();
    if (u > v) std::swap(u, v);
    const auto& edges = g.edges();
    auto it = std::lower_bound(edges.begin(), edges.end(), Edge{u, v});
    if (it == edges.end() || *it != Edge{u, v}) {
      throw ConsistencyError("weighted edge " + std::to_string(u) + "-" + std::to_string(v) +
                             " is not in the graph");
    }
    w.edge_w[static_cast<std::size_t>(it - edges.begin())] = e[2].get<double>();
  }
  for (double x : w.edge_w) {
    if (x < 0) throw ConsistencyError("weights file does not cover every edge");
  }
  validate(w, g);
  return w;
}

Json overhead_to_json(const OverheadReport& r) {
  Json doc{{"nodes", r.nodes},
           {"total_entries", r.total_entries},
           {"total_updates", r.total_updates},
           {"avg_entries_per_update", r.avg_entries_per_update},
           {"rt_memory_estimate", r.rt_memory_estimate},
           {"per_packet_latency_s", r.per_packet_latency}};
  auto put = [&](const char* key, const auto& opt) {
    if (opt) doc[key] = *opt;
  };
  put("comm_entries_a", r.comm_entries_a);
  put("measured_cross_entries", r.measured_cross_entries);
  put("cross_fraction", r.cross_fraction);
  put("internal_updates_b", r.internal_updates_b);
  put("sync_messages_b", r.sync_messages_b);
  put("sync_bytes_b", r.sync_bytes_b);
  put("mem_overhead_b_bits", r.mem_overhead_b_bits);
  put("fraction_b", r.fraction_b);
  Json figures = Json::array();
  for (const auto& f : r.overheads) {
    Json ex = Json::array();
    for (const auto& e : f.extrapolations) ex.push_back(extrapolation_json(e));
    figures.push_back({{"basis", f.basis},
                       {"entries", f.entries},
                       {"seconds", f.seconds},
                       {"minutes", f.seconds / 60},
                       {"extrapolations_seconds", std::move(ex)}});
  }
  doc["overheads"] = std::move(figures);
  return doc;
}

std::string overhead_csv(const OverheadReport& r) {
  std::ostringstream out;
  out << "metric,value\n";
  out << "nodes," << r.nodes << '\n';
  out << "total_entries," << r.total_entries << '\n';
  out << "total_updates," << r.total_updates << '\n';
  out << "avg_entries_per_update," << fmt(r.avg_entries_per_update) << '\n';
  out << "rt_memory_estimate," << fmt(r.rt_memory_estimate) << '\n';
  auto put = [&](const char* key, const auto& opt) {
    if (opt) out << key << ',' << *opt << '\n';
  };
  put("comm_entries_a", r.comm_entries_a);
  put("measured_cross_entries", r.measured_cross_entries);
  if (r.cross_fraction) out << "cross_fraction," << fmt(*r.cross_fraction) << '\n';
  put("internal_updates_b", r.internal_updates_b);
  put("sync_messages_b", r.sync_messages_b);
  put("sync_bytes_b", r.sync_bytes_b);
  put("mem_overhead_b_bits", r.mem_overhead_b_bits);
  if (r.fraction_b) out << "fraction_b," << fmt(*r.fraction_b) << '\n';
  for (const auto& f : r.overheads) {
    out << "overhead_seconds[" << f.basis << "]," << fmt(f.seconds) << '\n';
    for (const auto& e : f.extrapolations) {
      out << "overhead_seconds[" << f.basis << "][" << to_string(e.model) << "@"
          << fmt(e.target_n) << "]," << fmt(e.value) << '\n';
    }
  }
  return out.str();
}

Json table_to_json(const UpdateTable& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json cells = Json::array();
    for (const auto& c : row.cells) cells.push_back(c ? Json(*c) : Json(nullptr));
    rows.push_back({{"scenario", row.scenario}, {"row", row.label}, {"cells", std::move(cells)}});
  }
  return {{"sizes", t.sizes}, {"rows", std::move(rows)}};
}

std::string table_csv(const UpdateTable& t) {
  std::ostringstream out;
  out << "scenario,row";
  for (auto n : t.sizes) out << ',' << n;
  out << '\n';
  for (const auto& row : t.rows) {
    out << row.scenario << ',' << row.label;
    for (const auto& c : row.cells) {
      out << ',';
      if (c) out << fmt(*c);
    }
    out << '\n';
  }
  return out.str();
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": invalid JSON: " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

}  // namespace bgpsim
