#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hqc/circuit.hpp"
#include "hqc/cutter.hpp"
#include "hqc/hypergraph.hpp"
#include "hqc/partition.hpp"

namespace hqc {

/// For each qubit shared by several subcircuits whose multi-qubit gates all
/// sit in one subcircuit s*, moves the qubit's single-qubit gates into s*.
/// A shared qubit with no multi-qubit gate at all is gathered into the
/// subcircuit holding its first gate. Emptied subcircuits are dropped.
/// With `max_part_nodes` set, a qubit's move is skipped when it would push a
/// part above that many qubit-time nodes or empty a part.
SubcircuitSet reallocate_shared_qubits(const SubcircuitSet& subs,
                                       std::optional<std::size_t> max_part_nodes = std::nullopt);

struct PartitionCandidate {
  int k = 1;                        // requested part count; 1 = no partitioning
  PartitionAssignment assignment;   // final node assignment (after reallocation)
  std::size_t cut_points = 0;       // C, after repair and reallocation
  std::size_t cut_points_before_reallocation = 0;
  std::size_t gate_violations = 0;  // gate hyperedges split by the raw partition
  double edge_cut = 0.0;            // weighted cut of the raw partition
  bool balanced = false;            // repaired assignment within tolerance
  bool valid = false;               // final assignment balanced with K nonempty parts
  SubcircuitSet subcircuits;

  std::size_t num_parts() const { return subcircuits.subcircuits.size(); }
};

struct SweepOptions {
  int k_cap = 8;
  std::uint64_t seed = 0;
  int trials = 8;  // independent multilevel runs per K, best kept
  double alpha = kDefaultImbalance;
  unsigned workers = 0;  // concurrent K branches; 0 = one per K
};

/// Everything downstream of partition_k for one K: repair, extraction,
/// reallocation and the cut count. `scheduled` must match `hg`. A balanced
/// repaired assignment is reallocated under its balance bound, so valid
/// candidates stay balanced.
PartitionCandidate evaluate_assignment(const Circuit& scheduled, const TemporalHypergraph& hg,
                                       const WeightedGraph& g, PartitionAssignment raw, double alpha);

/// Best of `trials` seeded partition_k runs for a single K.
PartitionCandidate evaluate_k(const Circuit& scheduled, const TemporalHypergraph& hg, const WeightedGraph& g,
                              int k, const SweepOptions& options);

/// The whole circuit as one subcircuit.
PartitionCandidate single_part_candidate(const Circuit& scheduled);

/// Candidates for K = 2 .. min(n/2, k_cap), in K order.
std::vector<PartitionCandidate> sweep_candidates(const Circuit& c, const SweepOptions& options);

/// Deterministic reduction: valid before invalid, then fewer cut points,
/// smaller K, smaller widest subcircuit. Falls back to an unbalanced split
/// and finally to the single-part candidate.
PartitionCandidate select_candidate(const Circuit& scheduled, std::vector<PartitionCandidate> candidates);

/// K-sweep. Circuits with fewer than 4 qubits pass through as one part.
PartitionCandidate sweep_k(const Circuit& c, const SweepOptions& options = {});

}  // namespace hqc
