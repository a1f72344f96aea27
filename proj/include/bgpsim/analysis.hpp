#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bgpsim/bgp.hpp"
#include "bgpsim/graph.hpp"
#include "bgpsim/partition.hpp"

namespace bgpsim {

inline constexpr double kPerPacketLatency = 0.26e-3;  // seconds, 1 Gbps TCP/IP
inline constexpr std::uint64_t kIdBytes = 8;

// Entries LPs exchange when cross-partition sessions forward whole updates:
// sum over v of |neighbors of v on the other side| * ME(v).
std::uint64_t comm_entries_a(const Graph& g, const Bipartition& bp,
                             std::span<const std::uint64_t> me);

// Updates applied to duplicated boundary routers: sum of ME(v) over every v
// with a neighbor on the other side (each such v is duplicated once in a
// bipartition).
std::uint64_t internal_updates_b(const Graph& g, const Bipartition& bp,
                                 std::span<const std::uint64_t> me);

struct SyncTraffic {
  std::uint64_t messages = 0;
  std::uint64_t bytes = 0;
};

// One synchronisation message per internal update, carrying two router ids.
SyncTraffic sync_traffic_b(std::uint64_t internal_updates, std::uint64_t id_bytes = kIdBytes);

// |V| bits per duplicated boundary vertex.
std::uint64_t mem_overhead_b(const Graph& g, const Bipartition& bp);

// Size of all routing tables: k * n^2 (k = size of one entry).
double rt_memory(double n, double k);

// Entries actually sent over directed edges whose endpoints are on different
// sides.
std::uint64_t measured_cross_entries(const TraceStats& trace, const Graph& g,
                                     const Bipartition& bp);

// One packet per entry.
double time_overhead(double entries, double per_packet_latency = kPerPacketLatency);

enum class GrowthModel { kProportional, kSqrtLinear };
std::string to_string(GrowthModel m);

struct Measurement {
  double n = 0;
  double value = 0;
};

// Least squares of sqrt(value) against n.
struct SqrtLinearFit {
  double intercept = 0;
  double slope = 0;
  double r_squared = 0;
  double predict(double n) const;
};

SqrtLinearFit fit_sqrt_linear(std::span<const Measurement> points);

struct Extrapolation {
  GrowthModel model = GrowthModel::kProportional;
  double target_n = 0;
  double value = 0;
  std::optional<double> r_squared;  // sqrt_linear only
};

// proportional: value * target / n of the largest-n point.
// sqrt_linear: squared prediction of the sqrt fit (needs >= 2 points).
Extrapolation extrapolate(std::span<const Measurement> points, double target_n,
                          GrowthModel model);

struct OverheadOptions {
  double per_packet_latency = kPerPacketLatency;
  std::vector<double> targets = {10000, 100000};
  std::uint64_t id_bytes = kIdBytes;
  double entry_size = 1;  // k in the routing-table memory estimate
};

// Entry count with its time cost and proportional projections.
struct OverheadFigure {
  std::string basis;  // "solution_a", "solution_b" or "override"
  double entries = 0;
  double seconds = 0;
  std::vector<Extrapolation> extrapolations;  // value in seconds
};

struct OverheadReport {
  std::size_t nodes = 0;
  std::uint64_t total_entries = 0;
  std::uint64_t total_updates = 0;
  double avg_entries_per_update = 0;
  double rt_memory_estimate = 0;
  double per_packet_latency = kPerPacketLatency;

  // Present when a Solution A partition was supplied.
  std::optional<std::uint64_t> comm_entries_a;
  std::optional<std::uint64_t> measured_cross_entries;
  std::optional<double> cross_fraction;

  // Present when a Solution B partition was supplied.
  std::optional<std::uint64_t> internal_updates_b;
  std::optional<std::uint64_t> sync_messages_b;
  std::optional<std::uint64_t> sync_bytes_b;
  std::optional<std::uint64_t> mem_overhead_b_bits;
  std::optional<double> fraction_b;

  std::vector<OverheadFigure> overheads;
};

OverheadFigure overhead_figure(const std::string& basis, double entries, double nodes,
                               const OverheadOptions& options);

OverheadReport analyze(const Graph& g, const TraceStats& trace, const Bipartition* part_a,
                       const Bipartition* part_b, const OverheadOptions& options = {});

// Analysis on a published entry count instead of a trace.
OverheadReport analyze_override(double entries, std::size_t nodes,
                                const OverheadOptions& options = {});

// One (scenario, topology) measurement feeding the update-entries table.
struct RunSummary {
  int scenario = 1;
  std::size_t nodes = 0;
  std::uint64_t total_entries = 0;
  std::optional<std::uint64_t> sol_a;  // measured cross entries, A partition
  std::optional<std::uint64_t> sol_b;  // internal updates, B partition
};

// Rows: per scenario "No partition", "Sol A on bipartition",
// "Sol B on bipartition"; columns: topology sizes ascending.
struct UpdateTable {
  struct Row {
    int scenario = 1;
    std::string label;
    std::vector<std::optional<double>> cells;
  };
  std::vector<std::size_t> sizes;
  std::vector<Row> rows;
};

// Throws ConsistencyError if two runs share (scenario, nodes).
UpdateTable build_update_table(std::span<const RunSummary> runs);

}  // namespace bgpsim
