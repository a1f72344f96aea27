#pragma once

#include <span>
#include <string>
#include <string_view>

#include "bgpsim/bgp.hpp"
#include "bgpsim/graph.hpp"

namespace bgpsim {

// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

// Digest of the canonical edge-list text (node count plus sorted edges).
std::string graph_digest(const Graph& g);

// Digest of every router's best table, one "router dest path..." line per
// installed route in (router, dest) order.
std::string tables_digest(std::span<const Router> routers);

}  // namespace bgpsim
