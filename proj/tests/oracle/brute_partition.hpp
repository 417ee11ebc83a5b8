#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hqc/circuit.hpp"

namespace oracle {

struct BruteResult {
  std::optional<std::size_t> min_cuts;  // nullopt: no admissible partition
  int k = 0;                            // smallest K attaining min_cuts
  std::uint64_t leaves = 0;
  std::vector<int> gate_part;  // an optimal assignment, per gate
};

/// Exhaustive search over gate-colocated assignments (each gate is placed
/// whole) into exactly K nonempty parts, K = 2 .. min(n/2, k_cap), with every
/// part holding at most ceil((100 + alpha_percent) |V| / (100 K)) qubit-time
/// nodes. The cost is the number of consecutive gate pairs on a qubit that
/// sit in different parts.
BruteResult min_cut_points(const hqc::Circuit& c, int k_cap = 8, int alpha_percent = 5);

}  // namespace oracle
