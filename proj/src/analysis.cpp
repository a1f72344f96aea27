#include "bgpsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "bgpsim/errors.hpp"

namespace bgpsim {

namespace {

void check_partition(const Graph& g, const Bipartition& bp) {
  if (bp.side.size() != g.node_count()) {
    throw ConsistencyError("partition covers " + std::to_string(bp.side.size()) +
                           " nodes, graph has " + std::to_string(g.node_count()));
  }
}

void check_me(const Graph& g, std::span<const std::uint64_t> me) {
  if (me.size() != g.node_count()) {
    throw ConsistencyError("ME counts cover " + std::to_string(me.size()) +
                           " nodes, graph has " + std::to_string(g.node_count()));
  }
}

std::size_t cross_neighbors(const Graph& g, const Bipartition& bp, NodeId v) {
  std::size_t count = 0;
  for (NodeId u : g.neighbors(v)) count += bp.side[u] != bp.side[v];
  return count;
}

}  // namespace

std::uint64_t comm_entries_a(const Graph& g, const Bipartition& bp,
                             std::span<const std::uint64_t> me) {
  check_partition(g, bp);
  check_me(g, me);
  std::uint64_t total = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) total += cross_neighbors(g, bp, v) * me[v];
  return total;
}

std::uint64_t internal_updates_b(const Graph& g, const Bipartition& bp,
                                 std::span<const std::uint64_t> me) {
  check_partition(g, bp);
  check_me(g, me);
  std::uint64_t total = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (cross_neighbors(g, bp, v) > 0) total += me[v];
  }
  return total;
}

SyncTraffic sync_traffic_b(std::uint64_t internal_updates, std::uint64_t id_bytes) {
  return {internal_updates, internal_updates * 2 * id_bytes};
}

std::uint64_t mem_overhead_b(const Graph& g, const Bipartition& bp) {
  check_partition(g, bp);
  std::uint64_t duplicated = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) duplicated += cross_neighbors(g, bp, v) > 0;
  return static_cast<std::uint64_t>(g.node_count()) * duplicated;
}

double rt_memory(double n, double k) {
  if (!(n > 0) || !(k > 0)) throw ParameterError("rt_memory requires n > 0 and k > 0");
  return k * n * n;
}

std::uint64_t measured_cross_entries(const TraceStats& trace, const Graph& g,
                                     const Bipartition& bp) {
  check_partition(g, bp);
  if (trace.edge_entries.size() != g.directed_count()) {
    throw ConsistencyError("trace does not belong to this graph");
  }
  std::uint64_t total = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nb = g.neighbors(u);
    const std::size_t base = g.directed_base(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (bp.side[u] != bp.side[nb[i]]) total += trace.edge_entries[base + i];
    }
  }
  return total;
}

double time_overhead(double entries, double per_packet_latency) {
  if (entries < 0) throw ParameterError("entry count must be non-negative");
  return entries * per_packet_latency;
}

std::string to_string(GrowthModel m) {
  return m == GrowthModel::kProportional ? "proportional" : "sqrt_linear";
}

double SqrtLinearFit::predict(double n) const {
  const double root = intercept + slope * n;
  return root * root;
}

SqrtLinearFit fit_sqrt_linear(std::span<const Measurement> points) {
  if (points.size() < 2) throw ParameterError("sqrt_linear fit needs at least 2 points");
  const double k = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& p : points) {
    if (p.value < 0) throw ParameterError("measurements must be non-negative");
    sx += p.n;
    sy += std::sqrt(p.value);
  }
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : points) {
    const double dx = p.n - mx, dy = std::sqrt(p.value) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw ParameterError("sqrt_linear fit needs at least 2 distinct sizes");
  SqrtLinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (const auto& p : points) {
    const double r = std::sqrt(p.value) - (fit.intercept + fit.slope * p.n);
    ss_res += r * r;
  }
  fit.r_squared = syy == 0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

Extrapolation extrapolate(std::span<const Measurement> points, double target_n,
                          GrowthModel model) {
  if (!(target_n > 0)) throw ParameterError("target_n must be positive");
  if (points.empty()) throw ParameterError("extrapolation needs at least one measurement");
  Extrapolation out{model, target_n, 0, std::nullopt};
  if (model == GrowthModel::kProportional) {
    const auto& ref = *std::max_element(points.begin(), points.end(),
                                        [](const Measurement& a, const Measurement& b) {
                                          return a.n < b.n;
                                        });
    if (!(ref.n > 0)) throw ParameterError("measurement size must be positive");
    out.value = ref.value * target_n / ref.n;
    return out;
  }
  const auto fit = fit_sqrt_linear(points);
  out.value = fit.predict(target_n);
  out.r_squared = fit.r_squared;
  return out;
}

OverheadFigure overhead_figure(const std::string& basis, double entries, double nodes,
                               const OverheadOptions& options) {
  OverheadFigure fig{basis, entries, time_overhead(entries, options.per_packet_latency), {}};
  const Measurement here{nodes, fig.seconds};
  for (double target : options.targets) {
    fig.extrapolations.push_back(
        extrapolate(std::span(&here, 1), target, GrowthModel::kProportional));
  }
  return fig;
}

OverheadReport analyze(const Graph& g, const TraceStats& trace, const Bipartition* part_a,
                       const Bipartition* part_b, const OverheadOptions& options) {
  if (trace.me.size() != g.node_count() || trace.edge_entries.size() != g.directed_count()) {
    throw ConsistencyError("trace does not belong to this graph");
  }
  OverheadReport r;
  r.nodes = g.node_count();
  r.total_entries = trace.total_entries;
  r.total_updates = trace.total_updates;
  r.avg_entries_per_update = trace.avg_entries_per_update();
  r.rt_memory_estimate = g.node_count() > 0 ? rt_memory(static_cast<double>(g.node_count()),
                                                        options.entry_size)
                                            : 0.0;
  r.per_packet_latency = options.per_packet_latency;
  const double total = static_cast<double>(trace.total_entries);
  auto fraction = [&](std::uint64_t x) {
    return trace.total_entries == 0 ? 0.0 : static_cast<double>(x) / total;
  };

  if (part_a != nullptr) {
    r.comm_entries_a = comm_entries_a(g, *part_a, trace.me);
    r.measured_cross_entries = measured_cross_entries(trace, g, *part_a);
    r.cross_fraction = fraction(*r.measured_cross_entries);
    r.overheads.push_back(overhead_figure("solution_a",
                                          static_cast<double>(*r.measured_cross_entries),
                                          static_cast<double>(r.nodes), options));
  }
  if (part_b != nullptr) {
    r.internal_updates_b = internal_updates_b(g, *part_b, trace.me);
    const auto sync = sync_traffic_b(*r.internal_updates_b, options.id_bytes);
    r.sync_messages_b = sync.messages;
    r.sync_bytes_b = sync.bytes;
    r.mem_overhead_b_bits = mem_overhead_b(g, *part_b);
    r.fraction_b = fraction(*r.internal_updates_b);
    r.overheads.push_back(overhead_figure("solution_b",
                                          static_cast<double>(*r.internal_updates_b),
                                          static_cast<double>(r.nodes), options));
  }
  return r;
}

OverheadReport analyze_override(double entries, std::size_t nodes,
                                const OverheadOptions& options) {
  if (nodes == 0) throw ParameterError("override requires a positive node count");
  if (!(entries >= 0) || !std::isfinite(entries)) {
    throw ParameterError("override entry count must be finite and non-negative");
  }
  OverheadReport r;
  r.nodes = nodes;
  r.total_entries = static_cast<std::uint64_t>(std::llround(entries));
  r.rt_memory_estimate = rt_memory(static_cast<double>(nodes), options.entry_size);
  r.per_packet_latency = options.per_packet_latency;
  r.overheads.push_back(
      overhead_figure("override", entries, static_cast<double>(nodes), options));
  return r;
}

UpdateTable build_update_table(std::span<const RunSummary> runs) {
  UpdateTable table;
  std::set<std::size_t> sizes;
  std::set<int> scenarios;
  std::map<std::pair<int, std::size_t>, const RunSummary*> index;
  for (const auto& run : runs) {
    if (!index.emplace(std::make_pair(run.scenario, run.nodes), &run).second) {
      throw ConsistencyError("two runs for scenario " + std::to_string(run.scenario) +
                             " on " + std::to_string(run.nodes) + " nodes");
    }
    sizes.insert(run.nodes);
    scenarios.insert(run.scenario);
  }
  table.sizes.assign(sizes.begin(), sizes.end());
  for (int s : scenarios) {
    UpdateTable::Row none{s, "No partition", {}}, a{s, "Sol A on bipartition", {}},
        b{s, "Sol B on bipartition", {}};
    for (std::size_t n : table.sizes) {
      auto it = index.find({s, n});
      if (it == index.end()) {
        none.cells.emplace_back();
        a.cells.emplace_back();
        b.cells.emplace_back();
        continue;
      }
      const RunSummary& run = *it->second;
      none.cells.emplace_back(static_cast<double>(run.total_entries));
      a.cells.push_back(run.sol_a ? std::optional<double>(static_cast<double>(*run.sol_a))
                                  : std::nullopt);
      b.cells.push_back(run.sol_b ? std::optional<double>(static_cast<double>(*run.sol_b))
                                  : std::nullopt);
    }
    table.rows.push_back(std::move(none));
    table.rows.push_back(std::move(a));
    table.rows.push_back(std::move(b));
  }
  return table;
}

}  // namespace bgpsim
