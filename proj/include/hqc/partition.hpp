#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hqc/hypergraph.hpp"

namespace hqc {

class PartitionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kDefaultImbalance = 0.05;

struct PartitionAssignment {
  std::vector<int> part_of;  // node id -> part in [0, num_parts)
  int num_parts = 0;

  bool operator==(const PartitionAssignment&) const = default;
  std::vector<std::size_t> part_sizes() const;
};

/// ceil((1 + alpha) * num_nodes / k): the largest part a balanced k-way
/// assignment may hold.
std::size_t max_part_size(std::size_t num_nodes, int k, double alpha = kDefaultImbalance);

/// Every part nonempty and no part above max_part_size.
bool is_balanced(const PartitionAssignment& a, double alpha = kDefaultImbalance);

/// Total weight of edges whose endpoints lie in different parts.
double cut_weight(const WeightedGraph& g, const PartitionAssignment& a);

struct PartitionOptions {
  double alpha = kDefaultImbalance;
  /// Initial-partition attempts on the coarsest graph; 0 tries every node as
  /// a growth seed when the coarse graph is small.
  int initial_trials = 0;
};

/// Multilevel k-way partitioning: heavy-edge matching down to
/// max(30, 4K) nodes, recursive greedy-growth bisection with FM on the
/// coarsest graph, then boundary refinement at each level while projecting
/// back. Edge weights are rounded to integers. Deterministic in seed.
PartitionAssignment partition_k(const WeightedGraph& g, int k, std::uint64_t seed,
                                const PartitionOptions& options = {});

/// Gate hyperedges whose nodes are not all in one part.
std::size_t count_gate_violations(const TemporalHypergraph& hg, const PartitionAssignment& a);

/// Pulls every split gate hyperedge into the part holding the plurality of its
/// nodes (ties to the lowest part id), until no gate hyperedge is split.
PartitionAssignment repair_gate_colocation(const TemporalHypergraph& hg, PartitionAssignment a);

/// Number of temporal hyperedges whose endpoints lie in different parts.
/// Throws PartitionError if a gate hyperedge is split.
std::size_t count_cut_points(const TemporalHypergraph& hg, const PartitionAssignment& a);

/// B^C, or nullopt once the value exceeds 2^63 - 1.
std::optional<std::uint64_t> sampling_overhead(std::size_t cuts, std::uint64_t bases = 4);

}  // namespace hqc
