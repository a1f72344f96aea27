#pragma once

#include <cstdint>

#include "bgpsim/graph.hpp"

namespace bgpsim {

// Generalized Linear Preference growth model. Defaults are the Internet
// AS-level fit of Bu & Towsley (2002).
struct GlpParams {
  std::size_t n = 1000;   // target node count
  double p = 0.4695;      // probability that a step adds links, not a node
  double beta = 0.6447;   // preference shift: P(i) ~ degree(i) - beta
  double m_mean = 1.13;   // mean links added per step
  std::uint64_t seed = 1;
};

// Validates ranges: n >= 3, 0 <= p < 1, beta < 1, m_mean >= 1, all finite.
void validate(const GlpParams& params);

// Grows a connected simple graph from a triangle until it has exactly
// params.n nodes. Each step draws m in {floor(m_mean), ceil(m_mean)} with
// mean m_mean, then with probability p adds m links between existing nodes
// (both ends chosen preferentially), otherwise adds one node linked to m
// distinct existing nodes chosen preferentially. Duplicate or self edges are
// resampled; a link that cannot be placed after a bounded number of draws is
// dropped.
Graph glp_generate(const GlpParams& params);

}  // namespace bgpsim
