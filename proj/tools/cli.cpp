#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "bgpsim/digest.hpp"
#include "bgpsim/errors.hpp"

namespace bgpsim::cli {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParameter:
      return kParameter;
    case ErrorKind::kConsistency:
      return kConsistency;
    case ErrorKind::kIo:
      return kIo;
    case ErrorKind::kSimulation:
      return kSimulation;
  }
  return kInternal;
}

namespace {

std::string num(double x) { return Json(x).dump(); }

std::string method_name(Method m) {
  switch (m) {
    case Method::kExact:
      return "exact";
    case Method::kHeuristic:
      return "heuristic";
    case Method::kAuto:
      break;
  }
  return "auto";
}

Method method_from_string(const std::string& s) {
  if (s == "exact") return Method::kExact;
  if (s == "heuristic") return Method::kHeuristic;
  if (s == "auto") return Method::kAuto;
  throw ParameterError("method must be auto, exact or heuristic");
}

Method resolve(Method m, std::size_t nodes, std::size_t exact_limit) {
  if (m != Method::kAuto) return m;
  return nodes <= exact_limit ? Method::kExact : Method::kHeuristic;
}

Json overhead_options_json(const OverheadOptions& o) {
  return {{"per_packet_latency_s", o.per_packet_latency},
          {"targets", o.targets},
          {"id_bytes", o.id_bytes},
          {"entry_size", o.entry_size}};
}

std::string gen_config_digest(const GlpParams& p) {
  return sha256_hex(Json{{"stage", "gen"},
                         {"n", p.n},
                         {"p", p.p},
                         {"beta", p.beta},
                         {"m_mean", p.m_mean},
                         {"seed", p.seed}}
                        .dump());
}

std::string sim_config_digest(const std::string& graph_dig, const ScenarioConfig& c) {
  return sha256_hex(Json{{"stage", "sim"},
                         {"graph", graph_dig},
                         {"scenario", c.scenario},
                         {"mrai", c.mrai},
                         {"seed", c.seed},
                         {"session_order", "canonical"}}
                        .dump());
}

std::string partition_config_digest(const std::string& graph_dig, const std::string& weights_dig,
                                    Method resolved, const PartitionOptions& o) {
  return sha256_hex(Json{{"stage", "partition"},
                         {"graph", graph_dig},
                         {"weights", weights_dig},
                         {"objective", to_string(o.objective)},
                         {"epsilon", o.epsilon},
                         {"method", method_name(resolved)},
                         {"exact_limit", o.exact_limit},
                         {"restarts", o.heuristic.restarts},
                         {"seed", o.heuristic.seed},
                         {"max_passes", o.heuristic.max_passes},
                         {"swap_limit", o.heuristic.swap_limit}}
                        .dump());
}

// Value of a "# key value" comment line in an edge-list file.
std::optional<std::string> comment_value(const fs::path& path, const std::string& key) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# " + key + " ", 0) == 0) return line.substr(key.size() + 3);
  }
  return std::nullopt;
}

void write_graph(const Graph& g, const GlpParams& p, const fs::path& out) {
  std::vector<std::string> comments = {
      "generator glp n=" + std::to_string(p.n) + " p=" + num(p.p) + " beta=" + num(p.beta) +
          " m_mean=" + num(p.m_mean) + " seed=" + std::to_string(p.seed),
      "config_digest " + gen_config_digest(p)};
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  save_edgelist(g, out, comments);
}

UpdateTable table_from_report(const Json& report) {
  UpdateTable t;
  t.sizes = report["table"]["sizes"].get<std::vector<std::size_t>>();
  for (const auto& row : report["table"]["rows"]) {
    UpdateTable::Row r{row["scenario"].get<int>(), row["row"].get<std::string>(), {}};
    for (const auto& c : row["cells"]) {
      r.cells.push_back(c.is_null() ? std::nullopt : std::optional<double>(c.get<double>()));
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Document builders

Json simulate_document(const Graph& g, const ScenarioConfig& config) {
  const ScenarioResult result = run_scenario(g, config);
  TraceMeta meta;
  meta.scenario = config.scenario;
  meta.mrai = config.mrai;
  meta.seed = config.seed;
  meta.graph_digest = graph_digest(g);
  meta.nodes = g.node_count();
  meta.edges = g.edge_count();
  meta.events = result.events;
  meta.final_clock = result.final_clock;
  meta.tables_digest = tables_digest(result.routers);
  meta.config_digest = sim_config_digest(meta.graph_digest, config);
  return trace_to_json(g, result.trace, meta);
}

Json partition_document(const Graph& g, const Json* trace_doc, const WeightSpec& weights,
                        const std::string& weights_source, const std::string& weights_digest,
                        const PartitionOptions& options) {
  const Method method = resolve(options.method, g.node_count(), options.exact_limit);
  PartitionMeta meta;
  meta.objective = options.objective;
  meta.method = method_name(method);
  meta.seed = options.heuristic.seed;
  meta.restarts = options.heuristic.restarts;
  meta.graph_digest = graph_digest(g);
  meta.weights_source = weights_source;
  meta.weights_digest = weights_digest;
  if (trace_doc != nullptr) meta.scenario = (*trace_doc)["scenario"].get<int>();
  meta.config_digest =
      partition_config_digest(meta.graph_digest, weights_digest, method, options);

  Bipartition bp;
  if (method == Method::kExact) {
    auto r = exact_bipartition(g, weights, options.objective, options.epsilon,
                               options.exact_limit);
    bp = std::move(r.partition);
    meta.cost = r.cost;
    meta.unconstrained_cost = r.unconstrained_cost;
  } else {
    auto r = heuristic_bipartition(g, weights, options.objective, options.epsilon,
                                   options.heuristic);
    bp = std::move(r.partition);
    meta.cost = r.cost;
  }
  return partition_to_json(bp, meta);
}

namespace {

Bipartition partition_for(const Graph& g, const Json& doc, const std::string& gd) {
  auto [bp, meta] = partition_from_json(doc);
  if (meta.graph_digest != gd || bp.side.size() != g.node_count()) {
    throw ConsistencyError("partition was computed on a different graph");
  }
  return bp;
}

Json partition_summary(const Json& doc) {
  Json s{{"objective", doc["objective"]},
         {"method", doc["method"]},
         {"epsilon", doc["epsilon"]},
         {"cost", doc["cost"]},
         {"seed", doc["seed"]},
         {"restarts", doc["restarts"]},
         {"sizes", doc["sizes"]},
         {"digest", document_digest(doc)}};
  if (doc.contains("unconstrained_cost")) s["unconstrained_cost"] = doc["unconstrained_cost"];
  return s;
}

}  // namespace

Json analysis_document(const Graph& g, const Json& trace_doc, const Json* part_a,
                       const Json* part_b, const OverheadOptions& options) {
  const std::string gd = graph_digest(g);
  const TraceDocument trace = trace_from_json(trace_doc, g);
  std::optional<Bipartition> a, b;
  Json partitions = Json::object();
  if (part_a != nullptr) {
    a = partition_for(g, *part_a, gd);
    partitions["A"] = partition_summary(*part_a);
  }
  if (part_b != nullptr) {
    b = partition_for(g, *part_b, gd);
    partitions["B"] = partition_summary(*part_b);
  }
  const OverheadReport r =
      analyze(g, trace.stats, a ? &*a : nullptr, b ? &*b : nullptr, options);
  Json doc{{"schema", "bgpsim.analysis/1"},
           {"scenario", trace.meta.scenario},
           {"mrai", trace.meta.mrai},
           {"seed", trace.meta.seed},
           {"graph", {{"digest", gd}, {"nodes", g.node_count()}, {"edges", g.edge_count()}}},
           {"trace_digest", document_digest(trace_doc)},
           {"partitions", std::move(partitions)},
           {"options", overhead_options_json(options)},
           {"overhead", overhead_to_json(r)}};
  doc["config_digest"] = sha256_hex(Json{{"stage", "analyze"},
                                         {"trace", doc["trace_digest"]},
                                         {"partitions", doc["partitions"]},
                                         {"options", doc["options"]}}
                                        .dump());
  return doc;
}

Json report_document(const std::vector<Graph>& graphs, const std::vector<Json>& traces,
                     const std::vector<Json>& partitions, const OverheadOptions& options) {
  std::map<std::string, const Graph*> by_digest;
  for (const auto& g : graphs) by_digest[graph_digest(g)] = &g;

  struct Slot {
    const Json* a = nullptr;
    const Json* b = nullptr;
  };
  std::map<std::string, Slot> slots;  // trace digest -> partitions
  for (const auto& t : traces) slots[document_digest(t)];
  for (const auto& p : partitions) {
    const auto [bp, meta] = partition_from_json(p);
    if (meta.weights_source != "trace" || !slots.count(meta.weights_digest)) {
      throw ConsistencyError("partition does not derive from any supplied trace");
    }
    Slot& slot = slots[meta.weights_digest];
    const Json*& target = meta.objective == Objective::kA ? slot.a : slot.b;
    if (target != nullptr) {
      throw ConsistencyError("two objective-" + to_string(meta.objective) +
                             " partitions for one trace");
    }
    target = &p;
  }

  std::vector<std::pair<std::pair<int, std::size_t>, Json>> runs;
  std::vector<RunSummary> summaries;
  std::vector<std::string> trace_digests;
  for (const auto& t : traces) {
    const std::string td = document_digest(t);
    trace_digests.push_back(td);
    const std::string gd = t.contains("graph") ? t["graph"].value("digest", "") : "";
    auto git = by_digest.find(gd);
    if (git == by_digest.end()) throw ConsistencyError("no graph supplied for trace " + td);
    const Slot& slot = slots[td];
    Json analysis = analysis_document(*git->second, t, slot.a, slot.b, options);
    const Json& ov = analysis["overhead"];
    RunSummary s;
    s.scenario = analysis["scenario"].get<int>();
    s.nodes = git->second->node_count();
    s.total_entries = ov["total_entries"].get<std::uint64_t>();
    if (ov.contains("measured_cross_entries")) {
      s.sol_a = ov["measured_cross_entries"].get<std::uint64_t>();
    }
    if (ov.contains("internal_updates_b")) s.sol_b = ov["internal_updates_b"].get<std::uint64_t>();
    summaries.push_back(s);
    runs.push_back({{s.scenario, s.nodes}, std::move(analysis)});
  }
  std::sort(runs.begin(), runs.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  const UpdateTable table = build_update_table(summaries);

  Json run_list = Json::array();
  Json orderings = Json::array();
  for (auto& [key, analysis] : runs) {
    const Json& ov = analysis["overhead"];
    if (ov.contains("measured_cross_entries") && ov.contains("internal_updates_b")) {
      orderings.push_back({{"scenario", key.first},
                           {"nodes", key.second},
                           {"sol_b_le_sol_a", ov["internal_updates_b"].get<std::uint64_t>() <=
                                                  ov["measured_cross_entries"].get<std::uint64_t>()}});
    }
    run_list.push_back(std::move(analysis));
  }

  // Growth of the unpartitioned entry counts per scenario, both models.
  Json growth = Json::array();
  std::map<int, std::vector<Measurement>> points;
  for (const auto& s : summaries) {
    points[s.scenario].push_back({static_cast<double>(s.nodes),
                                  static_cast<double>(s.total_entries)});
  }
  for (auto& [scenario, pts] : points) {
    std::sort(pts.begin(), pts.end(),
              [](const Measurement& x, const Measurement& y) { return x.n < y.n; });
    Json g{{"scenario", scenario}, {"quantity", "total_entries"}, {"provenance", "measured"}};
    Json pj = Json::array();
    for (const auto& p : pts) pj.push_back({p.n, p.value});
    g["points"] = std::move(pj);
    Json preds = Json::array();
    for (double target : options.targets) {
      preds.push_back(
          [&] {
            auto e = extrapolate(pts, target, GrowthModel::kProportional);
            Json j{{"model", to_string(e.model)}, {"target_n", target}, {"value", e.value}};
            return j;
          }());
    }
    const bool fit_ok = pts.size() >= 2 && pts.front().n != pts.back().n;
    if (fit_ok) {
      const auto fit = fit_sqrt_linear(pts);
      g["sqrt_linear_fit"] = {{"intercept", fit.intercept},
                              {"slope", fit.slope},
                              {"r_squared", fit.r_squared}};
      for (double target : options.targets) {
        preds.push_back({{"model", "sqrt_linear"}, {"target_n", target}, {"value", fit.predict(target)}});
      }
    }
    g["predictions"] = std::move(preds);
    growth.push_back(std::move(g));
  }

  std::sort(trace_digests.begin(), trace_digests.end());
  std::vector<std::string> part_digests;
  for (const auto& p : partitions) part_digests.push_back(document_digest(p));
  std::sort(part_digests.begin(), part_digests.end());
  Json doc{{"schema", "bgpsim.report/1"},
           {"options", overhead_options_json(options)},
           {"runs", std::move(run_list)},
           {"table", table_to_json(table)},
           {"growth", std::move(growth)},
           {"orderings", std::move(orderings)},
           {"inputs", {{"traces", trace_digests}, {"partitions", part_digests}}}};
  doc["config_digest"] = sha256_hex(Json{{"stage", "report"},
                                         {"inputs", doc["inputs"]},
                                         {"options", doc["options"]}}
                                        .dump());
  return doc;
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_gen(const GenOptions& o, std::ostream& log) {
  validate(o.glp);
  const Graph g = glp_generate(o.glp);
  write_graph(g, o.glp, o.out);
  log << "wrote " << o.out.string() << " (" << g.node_count() << " nodes, " << g.edge_count()
      << " edges)\n";
}

void cmd_sim(const SimOptions& o, std::ostream& log) {
  validate(o.scenario);
  const Graph g = load_edgelist(o.graph);
  const Json doc = simulate_document(g, o.scenario);
  write_json(o.out, doc);
  if (!o.csv.empty()) write_text(o.csv, trace_csv(g, trace_from_json(doc, g).stats));
  log << "scenario " << o.scenario.scenario << ": " << doc["totals"]["updates"] << " updates, "
      << doc["totals"]["entries"] << " entries -> " << o.out.string() << '\n';
}

void cmd_partition(const PartitionOptions& o, std::ostream& log) {
  const Graph g = load_edgelist(o.graph);
  const int sources = !o.trace.empty() + !o.weights.empty() + (o.unit_weights ? 1 : 0);
  if (sources != 1) {
    throw ParameterError("give exactly one of --trace, --weights, --unit-weights");
  }
  Json doc;
  if (!o.trace.empty()) {
    const Json trace = read_json(o.trace);
    const auto parsed = trace_from_json(trace, g);
    doc = partition_document(g, &trace, weights_from_trace(parsed.stats, g), "trace",
                             document_digest(trace), o);
  } else if (!o.weights.empty()) {
    const Json wdoc = read_json(o.weights);
    doc = partition_document(g, nullptr, weights_from_json(wdoc, g), "weights-file",
                             document_digest(wdoc), o);
  } else {
    doc = partition_document(g, nullptr, WeightSpec::unit(g), "unit", "unit", o);
  }
  write_json(o.out, doc);
  if (!o.csv.empty()) write_text(o.csv, partition_csv(partition_from_json(doc).first));
  log << "objective " << doc["objective"].get<std::string>() << " ("
      << doc["method"].get<std::string>() << "): cost " << doc["cost"] << " -> "
      << o.out.string() << '\n';
}

void cmd_analyze(const AnalyzeOptions& o, std::ostream& log) {
  Json doc;
  if (o.entries_override) {
    const OverheadReport r = analyze_override(*o.entries_override, o.override_nodes, o.overhead);
    doc = {{"schema", "bgpsim.analysis/1"},
           {"override", {{"entries", *o.entries_override}, {"nodes", o.override_nodes}}},
           {"options", overhead_options_json(o.overhead)},
           {"overhead", overhead_to_json(r)}};
    doc["config_digest"] = sha256_hex(Json{{"stage", "analyze"},
                                           {"override", doc["override"]},
                                           {"options", doc["options"]}}
                                          .dump());
    if (!o.csv.empty()) write_text(o.csv, overhead_csv(r));
  } else {
    if (o.graph.empty() || o.trace.empty()) {
      throw ParameterError("analyze needs --graph and --trace (or --entries)");
    }
    const Graph g = load_edgelist(o.graph);
    const Json trace = read_json(o.trace);
    std::optional<Json> a, b;
    if (!o.partition_a.empty()) a = read_json(o.partition_a);
    if (!o.partition_b.empty()) b = read_json(o.partition_b);
    doc = analysis_document(g, trace, a ? &*a : nullptr, b ? &*b : nullptr, o.overhead);
    if (!o.csv.empty()) {
      const TraceDocument t = trace_from_json(trace, g);
      std::optional<Bipartition> pa, pb;
      if (a) pa = partition_from_json(*a).first;
      if (b) pb = partition_from_json(*b).first;
      write_text(o.csv, overhead_csv(analyze(g, t.stats, pa ? &*pa : nullptr,
                                             pb ? &*pb : nullptr, o.overhead)));
    }
  }
  if (!o.out.empty()) {
    write_json(o.out, doc);
  } else {
    log << doc.dump(2) << '\n';
    return;
  }
  for (const auto& f : doc["overhead"]["overheads"]) {
    log << f["basis"].get<std::string>() << ": " << f["entries"] << " entries, "
        << f["minutes"].get<double>() << " min\n";
  }
}

void cmd_report(const ReportOptions& o, std::ostream& log) {
  std::vector<Graph> graphs;
  for (const auto& p : o.graphs) graphs.push_back(load_edgelist(p));
  std::vector<Json> traces, partitions;
  for (const auto& p : o.traces) traces.push_back(read_json(p));
  for (const auto& p : o.partitions) partitions.push_back(read_json(p));
  const Json doc = report_document(graphs, traces, partitions, o.overhead);
  write_json(o.out, doc);
  if (!o.csv.empty()) write_text(o.csv, table_csv(table_from_report(doc)));
  log << "report over " << traces.size() << " traces -> " << o.out.string() << '\n';
}

namespace {

bool reusable(const fs::path& path, const std::string& expected_digest, bool force) {
  if (force || !fs::exists(path)) return false;
  try {
    return read_json(path).value("config_digest", "") == expected_digest;
  } catch (const IoError&) {
    return false;  // truncated by an interrupted run
  }
}

}  // namespace

void cmd_pipeline(const PipelineOptions& o, std::ostream& log) {
  validate(o.glp);
  for (int s : o.scenarios) validate(ScenarioConfig{s});
  if (o.out_dir.empty()) throw ParameterError("pipeline needs an output directory");
  fs::create_directories(o.out_dir);

  // Stage 1: topology.
  const fs::path graph_path = o.out_dir / "graph.txt";
  Graph g;
  if (!o.force && fs::exists(graph_path) &&
      comment_value(graph_path, "config_digest") == gen_config_digest(o.glp)) {
    g = load_edgelist(graph_path);
    log << "graph: reusing " << graph_path.string() << '\n';
  } else {
    g = glp_generate(o.glp);
    write_graph(g, o.glp, graph_path);
    log << "graph: " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
  }
  const std::string gd = graph_digest(g);

  // Stage 2: one trace per scenario; missing ones run concurrently.
  std::vector<std::pair<int, fs::path>> trace_paths;
  std::vector<std::pair<std::size_t, std::future<Json>>> pending;
  std::vector<Json> traces(o.scenarios.size());
  for (std::size_t i = 0; i < o.scenarios.size(); ++i) {
    ScenarioConfig c;
    c.scenario = o.scenarios[i];
    c.mrai = o.mrai;
    c.seed = o.sim_seed;
    const fs::path path = o.out_dir / ("trace_s" + std::to_string(c.scenario) + ".json");
    trace_paths.emplace_back(c.scenario, path);
    if (reusable(path, sim_config_digest(gd, c), o.force)) {
      traces[i] = read_json(path);
      log << "sim s" << c.scenario << ": reusing " << path.string() << '\n';
    } else {
      pending.emplace_back(i, std::async(std::launch::async,
                                         [&g, c] { return simulate_document(g, c); }));
    }
  }
  for (auto& [i, fut] : pending) {
    traces[i] = fut.get();
    const fs::path& path = trace_paths[i].second;
    write_json(path, traces[i]);
    write_text(fs::path(path).replace_extension(".csv"),
               trace_csv(g, trace_from_json(traces[i], g).stats));
    log << "sim s" << trace_paths[i].first << ": " << traces[i]["totals"]["entries"]
        << " entries\n";
  }

  // Stage 3: partitions per (scenario, objective).
  std::vector<Json> partitions;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const std::string td = document_digest(traces[i]);
    const WeightSpec w = weights_from_trace(trace_from_json(traces[i], g).stats, g);
    for (Objective obj : o.objectives) {
      PartitionOptions po;
      po.objective = obj;
      po.epsilon = o.epsilon;
      po.method = o.method;
      po.exact_limit = o.exact_limit;
      po.heuristic = o.heuristic;
      const Method method = resolve(po.method, g.node_count(), po.exact_limit);
      const fs::path path = o.out_dir / ("partition_s" + std::to_string(trace_paths[i].first) +
                                         "_" + to_string(obj) + ".json");
      if (reusable(path, partition_config_digest(gd, td, method, po), o.force)) {
        partitions.push_back(read_json(path));
        log << "partition s" << trace_paths[i].first << " " << to_string(obj)
            << ": reusing " << path.string() << '\n';
      } else {
        partitions.push_back(partition_document(g, &traces[i], w, "trace", td, po));
        write_json(path, partitions.back());
        log << "partition s" << trace_paths[i].first << " " << to_string(obj) << ": cost "
            << partitions.back()["cost"] << '\n';
      }
    }
  }

  // Stage 4: report.
  const Json report = report_document({g}, traces, partitions, o.overhead);
  write_json(o.out_dir / "report.json", report);
  write_text(o.out_dir / "report.csv", table_csv(table_from_report(report)));

  Json run{{"schema", "bgpsim.run/1"},
           {"glp",
            {{"n", o.glp.n},
             {"p", o.glp.p},
             {"beta", o.glp.beta},
             {"m_mean", o.glp.m_mean},
             {"seed", o.glp.seed}}},
           {"scenarios", o.scenarios},
           {"mrai", o.mrai},
           {"sim_seed", o.sim_seed},
           {"epsilon", o.epsilon},
           {"method", method_name(o.method)},
           {"partition_seed", o.heuristic.seed},
           {"restarts", o.heuristic.restarts},
           {"options", overhead_options_json(o.overhead)},
           {"graph_digest", gd},
           {"report_digest", document_digest(report)}};
  std::vector<std::string> objs;
  for (auto obj : o.objectives) objs.push_back(to_string(obj));
  run["objectives"] = objs;
  write_json(o.out_dir / "run.json", run);
  log << "report: " << (o.out_dir / "report.json").string() << '\n';
}

// ---------------------------------------------------------------------------
// Argument parsing

namespace {

void add_glp_options(CLI::App* cmd, GlpParams& p) {
  cmd->add_option("-n,--nodes", p.n, "Target node count")->capture_default_str();
  cmd->add_option("--p", p.p, "Probability of a link-only step")->capture_default_str();
  cmd->add_option("--beta", p.beta, "Preference shift")->capture_default_str();
  cmd->add_option("--m-mean", p.m_mean, "Mean links per step")->capture_default_str();
  cmd->add_option("--graph-seed", p.seed, "Topology seed")->capture_default_str();
}

void add_overhead_options(CLI::App* cmd, OverheadOptions& o, double& latency_ms) {
  cmd->add_option("--latency-ms", latency_ms, "Per-packet latency in milliseconds")
      ->capture_default_str();
  cmd->add_option("--target", o.targets, "Extrapolation target sizes")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--id-bytes", o.id_bytes, "Router identifier size for sync messages")
      ->capture_default_str();
  cmd->add_option("--entry-size", o.entry_size, "Size k of one routing entry")
      ->capture_default_str();
}

void add_heuristic_options(CLI::App* cmd, HeuristicOptions& h) {
  cmd->add_option("--restarts", h.restarts, "Heuristic restarts")->capture_default_str();
  cmd->add_option("--partition-seed", h.seed, "Heuristic seed")->capture_default_str();
  cmd->add_option("--max-passes", h.max_passes, "Move passes per restart")
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"bgpsim: BGP simulation and distribution-overhead analysis"};
  app.set_config("--config", "", "TOML/INI file with options ([subcommand] sections)");
  app.require_subcommand(1);

  GenOptions gen_o;
  auto* gen = app.add_subcommand("gen", "Generate a GLP topology edge list");
  add_glp_options(gen, gen_o.glp);
  gen->add_option("-o,--out", gen_o.out, "Output edge-list file")->required();

  SimOptions sim_o;
  auto* sim = app.add_subcommand("sim", "Simulate BGP convergence and write a trace");
  sim->add_option("-g,--graph", sim_o.graph, "Edge-list file")->required();
  sim->add_option("-s,--scenario", sim_o.scenario.scenario, "Scenario 1, 2 or 3")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  sim->add_option("--mrai", sim_o.scenario.mrai, "MRAI in ticks")->capture_default_str();
  sim->add_option("--sim-seed", sim_o.scenario.seed, "Random-delivery seed")
      ->capture_default_str();
  sim->add_option("--event-cap", sim_o.scenario.event_cap, "Divergence cap on events");
  sim->add_option("-o,--out", sim_o.out, "Output trace JSON")->required();
  sim->add_option("--csv", sim_o.csv, "Also write the trace as CSV");

  PartitionOptions part_o;
  std::string part_objective = "A", part_method = "auto";
  auto* part = app.add_subcommand("partition", "Compute a balanced bipartition");
  part->add_option("-g,--graph", part_o.graph, "Edge-list file")->required();
  part->add_option("--trace", part_o.trace, "Trace JSON providing weights");
  part->add_option("--weights", part_o.weights, "Weights JSON");
  part->add_flag("--unit-weights", part_o.unit_weights, "Use unit weights");
  part->add_option("--objective", part_objective, "A (edge cut) or B (vertex boundary)")
      ->check(CLI::IsMember({"A", "B"}))
      ->capture_default_str();
  part->add_option("--epsilon", part_o.epsilon, "Balance tolerance")->capture_default_str();
  part->add_option("--method", part_method, "auto, exact or heuristic")
      ->check(CLI::IsMember({"auto", "exact", "heuristic"}))
      ->capture_default_str();
  part->add_option("--exact-limit", part_o.exact_limit, "Largest n for the exact solver")
      ->capture_default_str();
  add_heuristic_options(part, part_o.heuristic);
  part->add_option("-o,--out", part_o.out, "Output partition JSON")->required();
  part->add_option("--csv", part_o.csv, "Also write node,side CSV");

  AnalyzeOptions an_o;
  double an_latency_ms = kPerPacketLatency * 1e3;
  double an_entries = 0;
  auto* an = app.add_subcommand("analyze", "Evaluate distribution overheads for one trace");
  an->add_option("-g,--graph", an_o.graph, "Edge-list file");
  an->add_option("--trace", an_o.trace, "Trace JSON");
  an->add_option("--partition-a", an_o.partition_a, "Partition for Solution A figures");
  an->add_option("--partition-b", an_o.partition_b, "Partition for Solution B figures");
  auto* entries_opt =
      an->add_option("--entries", an_entries, "Analyze this entry count instead of a trace");
  an->add_option("--nodes", an_o.override_nodes, "Topology size for --entries")
      ->capture_default_str();
  add_overhead_options(an, an_o.overhead, an_latency_ms);
  an->add_option("-o,--out", an_o.out, "Output JSON (stdout if omitted)");
  an->add_option("--csv", an_o.csv, "Also write metric,value CSV");

  ReportOptions rep_o;
  double rep_latency_ms = kPerPacketLatency * 1e3;
  auto* rep = app.add_subcommand("report", "Build the update-entries table over many runs");
  rep->add_option("-g,--graph", rep_o.graphs, "Edge-list files")->required();
  rep->add_option("--trace", rep_o.traces, "Trace JSON files")->required();
  rep->add_option("--partition", rep_o.partitions, "Partition JSON files");
  add_overhead_options(rep, rep_o.overhead, rep_latency_ms);
  rep->add_option("-o,--out", rep_o.out, "Output report JSON")->required();
  rep->add_option("--csv", rep_o.csv, "Also write the table as CSV");

  PipelineOptions pipe_o;
  double pipe_latency_ms = kPerPacketLatency * 1e3;
  std::vector<std::string> pipe_objectives = {"A", "B"};
  std::string pipe_method = "auto";
  auto* pipe = app.add_subcommand("pipeline", "gen -> sim -> partition -> report");
  add_glp_options(pipe, pipe_o.glp);
  pipe->add_option("--scenarios", pipe_o.scenarios, "Scenarios to run")
      ->delimiter(',')
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  pipe->add_option("--objectives", pipe_objectives, "Partition objectives")
      ->delimiter(',')
      ->check(CLI::IsMember({"A", "B"}))
      ->capture_default_str();
  pipe->add_option("--mrai", pipe_o.mrai, "MRAI in ticks")->capture_default_str();
  pipe->add_option("--sim-seed", pipe_o.sim_seed, "Random-delivery seed")
      ->capture_default_str();
  pipe->add_option("--epsilon", pipe_o.epsilon, "Balance tolerance")->capture_default_str();
  pipe->add_option("--method", pipe_method, "auto, exact or heuristic")
      ->check(CLI::IsMember({"auto", "exact", "heuristic"}))
      ->capture_default_str();
  pipe->add_option("--exact-limit", pipe_o.exact_limit, "Largest n for the exact solver")
      ->capture_default_str();
  add_heuristic_options(pipe, pipe_o.heuristic);
  add_overhead_options(pipe, pipe_o.overhead, pipe_latency_ms);
  pipe->add_option("-o,--out-dir", pipe_o.out_dir, "Run directory")->required();
  pipe->add_flag("--force", pipe_o.force, "Recompute every stage");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      cmd_gen(gen_o, out);
    } else if (*sim) {
      cmd_sim(sim_o, out);
    } else if (*part) {
      part_o.objective = objective_from_string(part_objective);
      part_o.method = method_from_string(part_method);
      cmd_partition(part_o, out);
    } else if (*an) {
      an_o.overhead.per_packet_latency = an_latency_ms * 1e-3;
      if (entries_opt->count() > 0) an_o.entries_override = an_entries;
      cmd_analyze(an_o, out);
    } else if (*rep) {
      rep_o.overhead.per_packet_latency = rep_latency_ms * 1e-3;
      cmd_report(rep_o, out);
    } else if (*pipe) {
      pipe_o.overhead.per_packet_latency = pipe_latency_ms * 1e-3;
      pipe_o.method = method_from_string(pipe_method);
      pipe_o.objectives.clear();
      for (const auto& s : pipe_objectives) pipe_o.objectives.push_back(objective_from_string(s));
      cmd_pipeline(pipe_o, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed document: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("bgpsim");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bgpsim::cli
