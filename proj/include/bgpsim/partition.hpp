#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bgpsim/bgp.hpp"
#include "bgpsim/graph.hpp"

namespace bgpsim {

enum class Objective {
  kA,  // weighted edge cut
  kB,  // weighted vertex boundary
};

std::string to_string(Objective o);
Objective objective_from_string(const std::string& s);  // "A" | "B"

// edge_w is aligned with Graph::edges(); vertex_w with node ids.
struct WeightSpec {
  std::vector<double> edge_w;
  std::vector<double> vertex_w;

  static WeightSpec unit(const Graph& g);
  bool operator==(const WeightSpec&) const = default;
};

// Throws ConsistencyError on size mismatch, ParameterError on negative or
// non-finite weights.
void validate(const WeightSpec& w, const Graph& g);

// edge_w[uv] = entries(u->v) + entries(v->u); vertex_w[v] = ME(v).
WeightSpec weights_from_trace(const TraceStats& trace, const Graph& g);

struct Bipartition {
  std::vector<std::uint8_t> side;
  double epsilon = 0.1;

  std::size_t size(int s) const;
  // Both sides non-empty and ||V0| - |V1|| <= epsilon * n.
  bool balanced() const;
  bool operator==(const Bipartition&) const = default;
};

inline constexpr double kDefaultEpsilon = 0.1;
inline constexpr std::size_t kExactSizeLimit = 24;

// Sizes of side 0 allowed by the balance rule, as [lo, hi]; lo > hi when
// infeasible.
std::pair<std::size_t, std::size_t> balanced_range(std::size_t n, double epsilon);

double objective_a(const Graph& g, const WeightSpec& w, const Bipartition& bp);
double objective_b(const Graph& g, const WeightSpec& w, const Bipartition& bp);
double evaluate(Objective o, const Graph& g, const WeightSpec& w, const Bipartition& bp);

struct ExactResult {
  Bipartition partition;
  double cost = 0;
  // Best split with both sides non-empty but no balance rule.
  Bipartition unconstrained;
  double unconstrained_cost = 0;
};

// Branch and bound over side vectors in lexicographic order; the returned
// partition is the lexicographically smallest minimiser. Throws SizeError
// when n > size_limit and InfeasibleError when no balanced split exists.
ExactResult exact_bipartition(const Graph& g, const WeightSpec& w, Objective objective,
                              double epsilon = kDefaultEpsilon,
                              std::size_t size_limit = kExactSizeLimit);

struct HeuristicOptions {
  std::size_t restarts = 8;
  std::uint64_t seed = 1;
  std::size_t max_passes = 12;
  // Pairwise swap descent runs after the move passes on graphs this small.
  std::size_t swap_limit = 200;
};

struct HeuristicResult {
  Bipartition partition;
  double cost = 0;
  std::size_t best_restart = 0;
};

// Multi-start local search: each restart builds a balanced start (BFS-grown
// on even restarts, random on odd ones), runs Fiduccia-Mattheyses style
// passes of locked single-vertex moves with a one-vertex balance slack and
// rollback to the best balanced prefix, then a pairwise swap descent. The
// lowest cost wins, ties to the lowest restart index. Side labels are
// normalised so that vertex 0 is on side 0.
HeuristicResult heuristic_bipartition(const Graph& g, const WeightSpec& w, Objective objective,
                                      double epsilon = kDefaultEpsilon,
                                      const HeuristicOptions& options = {});

}  // namespace bgpsim
