#pragma once

#include <cstdint>
#include <random>

namespace bgpsim {

// Seeded pseudorandom source used for every random choice in the project.
//
// The bit stream is std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Derived draws do not use <random> distributions (their
// algorithms are implementation-defined); instead:
//   uniform_index(n): rejection sampling on the raw 64-bit output, rejecting
//                     draws >= 2^64 - (2^64 mod n), then taking draw mod n.
//   uniform01():      top 53 bits of one draw scaled by 2^-53.
// Both are therefore reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  std::uint64_t uniform_index(std::uint64_t n);
  double uniform01();
  bool bernoulli(double p) { return uniform01() < p; }

  // Deterministic derivation of an independent child seed (splitmix64 step).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

}  // namespace bgpsim
