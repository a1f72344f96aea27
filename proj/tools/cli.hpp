#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bgpsim/analysis.hpp"
#include "bgpsim/bgp.hpp"
#include "bgpsim/errors.hpp"
#include "bgpsim/glp.hpp"
#include "bgpsim/partition.hpp"
#include "bgpsim/serialize.hpp"

namespace bgpsim::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kParameter = 3,
  kConsistency = 4,
  kIo = 5,
  kSimulation = 6,
  kInternal = 70,
};

int exit_code_for(ErrorKind kind);

struct GenOptions {
  GlpParams glp;
  std::filesystem::path out;
};

struct SimOptions {
  std::filesystem::path graph;
  ScenarioConfig scenario;
  std::filesystem::path out;
  std::filesystem::path csv;  // optional
};

enum class Method { kAuto, kExact, kHeuristic };

struct PartitionOptions {
  std::filesystem::path graph;
  std::filesystem::path trace;    // weights from a trace, or
  std::filesystem::path weights;  // from a weights file, or
  bool unit_weights = false;      // all ones
  Objective objective = Objective::kA;
  double epsilon = kDefaultEpsilon;
  Method method = Method::kAuto;
  std::size_t exact_limit = kExactSizeLimit;
  HeuristicOptions heuristic;
  std::filesystem::path out;
  std::filesystem::path csv;
};

struct AnalyzeOptions {
  std::filesystem::path graph;
  std::filesystem::path trace;
  std::filesystem::path partition_a;
  std::filesystem::path partition_b;
  std::optional<double> entries_override;
  std::size_t override_nodes = 5000;
  OverheadOptions overhead;
  std::filesystem::path out;
  std::filesystem::path csv;
};

struct ReportOptions {
  std::vector<std::filesystem::path> graphs;
  std::vector<std::filesystem::path> traces;
  std::vector<std::filesystem::path> partitions;
  OverheadOptions overhead;
  std::filesystem::path out;
  std::filesystem::path csv;
};

struct PipelineOptions {
  GlpParams glp;
  std::vector<int> scenarios = {1, 2, 3};
  std::vector<Objective> objectives = {Objective::kA, Objective::kB};
  Tick mrai = 0;
  std::uint64_t sim_seed = 1;
  double epsilon = kDefaultEpsilon;
  Method method = Method::kAuto;
  std::size_t exact_limit = kExactSizeLimit;
  HeuristicOptions heuristic;
  OverheadOptions overhead;
  std::filesystem::path out_dir;
  bool force = false;
};

// Document builders shared by the subcommands and the pipeline.
Json simulate_document(const Graph& g, const ScenarioConfig& config);
Json partition_document(const Graph& g, const Json* trace_doc, const WeightSpec& weights,
                        const std::string& weights_source, const std::string& weights_digest,
                        const PartitionOptions& options);
Json analysis_document(const Graph& g, const Json& trace_doc, const Json* part_a,
                       const Json* part_b, const OverheadOptions& options);
Json report_document(const std::vector<Graph>& graphs, const std::vector<Json>& traces,
                     const std::vector<Json>& partitions, const OverheadOptions& options);

void cmd_gen(const GenOptions& o, std::ostream& log);
void cmd_sim(const SimOptions& o, std::ostream& log);
void cmd_partition(const PartitionOptions& o, std::ostream& log);
void cmd_analyze(const AnalyzeOptions& o, std::ostream& log);
void cmd_report(const ReportOptions& o, std::ostream& log);
void cmd_pipeline(const PipelineOptions& o, std::ostream& log);

// Parses argv, dispatches, and maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bgpsim::cli
