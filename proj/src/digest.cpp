#include "bgpsim/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <sstream>

#include "bgpsim/errors.hpp"

namespace bgpsim {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw SimulationError("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

std::string graph_digest(const Graph& g) {
  std::ostringstream text;
  write_edgelist(text, g);
  return sha256_hex(text.str());
}

std::string tables_digest(std::span<const Router> routers) {
  std::ostringstream text;
  for (const Router& r : routers) {
    for (const auto& entry : r.best_table()) {
      text << r.id() << ' ' << entry.dest;
      for (NodeId hop : entry.path) text << ' ' << hop;
      text << '\n';
    }
  }
  return sha256_hex(text.str());
}

}  // namespace bgpsim
