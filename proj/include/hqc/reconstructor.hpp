#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include "hqc/cutter.hpp"
#include "hqc/executor.hpp"

namespace hqc {

class ReconstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ReconstructionPath { Exact, Sampled };

/// Allowed deviation of the clipped total from 1 before renormalising.
double normalization_tolerance(ReconstructionPath path);

/// Full-circuit distribution; key bit q is global qubit q.
struct FullDistribution {
  int num_qubits = 0;
  std::map<std::uint64_t, double> probs;

  double at(std::uint64_t bits) const {
    auto it = probs.find(bits);
    return it == probs.end() ? 0.0 : it->second;
  }
};

/// Upstream sign for outcome m of a cut measured for label `basis`:
/// +1 for I, (+1, -1) for X, Y, Z.
double upstream_weight(Basis basis, int outcome);
/// Coefficient of preparation `prep` in the downstream operator for `basis`:
/// I = |0>+|1>, Z = |0>-|1>, X = 2|+> - |0> - |1>, Y = 2|i> - |0> - |1>.
double downstream_weight(Basis basis, Prep prep);

/// Maps each subcircuit's readout bits (bit j = its j-th output wire) to a
/// global bitstring. Throws when a gate-touched qubit is read out by zero or
/// by several subcircuits. Idle qubits read 0.
std::uint64_t assemble_bitstring(std::span<const std::uint64_t> local_outcomes, const SubcircuitSet& subs);

/// q0 first: character i is the value of qubit i.
std::string bitstring_to_string(std::uint64_t bits, int num_qubits);

/// Wire-cut recombination: P(x) = 2^-C sum over {I,X,Y,Z}^C of the product of
/// per-subcircuit terms. Cut labels are contracted one subcircuit at a time.
/// Negative dust is clipped and the result renormalised when the clipped total
/// lies within the path tolerance.
FullDistribution reconstruct(const SubcircuitSet& subs, const std::vector<VariantSet>& variants,
                             const ExecutionResults& results, ReconstructionPath path);

/// The same sum evaluated term by term over all 4^C label vectors, without
/// clipping. For cross-checking on small C.
FullDistribution reconstruct_naive(const SubcircuitSet& subs, const std::vector<VariantSet>& variants,
                                   const ExecutionResults& results);

double total_variation(const FullDistribution& a, const FullDistribution& b);

}  // namespace hqc
