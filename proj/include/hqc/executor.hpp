#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "hqc/circuit.hpp"
#include "hqc/cutter.hpp"

namespace hqc {

class ExecutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcome index -> probability. Bit j of the index is measured wire j.
using Distribution = std::map<std::uint64_t, double>;

inline constexpr std::uint64_t kBytesPerAmplitude = 16;

/// M = B * 2^n bytes; saturates at UINT64_MAX.
std::uint64_t memory_requirement(std::size_t num_qubits, std::uint64_t bytes_per_amplitude = kBytesPerAmplitude);

/// Largest width whose full state fits in `memory_bytes`.
std::size_t max_qubits_for(std::uint64_t memory_bytes, std::uint64_t bytes_per_amplitude = kBytesPerAmplitude);

struct ResourceBudget {
  std::uint64_t memory_bytes = std::uint64_t{1} << 30;
  std::size_t max_multiqubit_gates = 5;
  std::size_t shots = 1000;
  std::uint64_t bytes_per_amplitude = kBytesPerAmplitude;
  int simulator_width_cap = 25;
};

enum class DecisionReason { NonClifford, Memory, Entanglement, WithinBudget, Forced };
std::string_view reason_name(DecisionReason r);

struct Decision {
  ExecMode mode = ExecMode::Classical;
  DecisionReason reason = DecisionReason::WithinBudget;
};

/// Quantum when the subcircuit (a) holds a non-Clifford gate, (b) needs more
/// state memory than the budget at its full local width, or (c) has more
/// multi-qubit gates than the entanglement threshold; checked in that order.
Decision decide(const Subcircuit& s, const ResourceBudget& budget);

/// Exact Born distribution over `measured` wires (statevector contraction
/// in time order). Refuses circuits whose state exceeds the budget.
Distribution run_classical(const Circuit& c, std::span<const int> measured, const ResourceBudget& budget);

struct NoiseModel {
  bool enabled = false;
  double eps_single = 0.001;
  double eps_multi = 0.01;
};

/// Shot sampler standing in for hardware. With noise enabled each gate is
/// followed, with probability eps, by a uniformly drawn non-identity Pauli
/// on its operands. Frequencies are count / shots.
Distribution run_quantum_sim(const Circuit& c, std::span<const int> measured, std::size_t shots,
                             const NoiseModel& noise, std::uint64_t seed, int width_cap = 25);

/// Per-variant RNG stream seed derived from (seed, subcircuit, variant).
std::uint64_t variant_seed(std::uint64_t seed, int subcircuit, int physical_variant);

struct VariantResult {
  int subcircuit = 0;
  int physical = 0;
  VariantLabel label;
  ExecMode mode = ExecMode::Classical;
  Distribution dist;
};

struct ExecutionOptions {
  NoiseModel noise;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0: hardware concurrency
};

/// results[s][v] for physical variant v of subcircuit s. Every subcircuit
/// must carry a mode. Variants run on a bounded worker pool.
using ExecutionResults = std::vector<std::vector<VariantResult>>;

ExecutionResults execute_variants(const SubcircuitSet& subs, const std::vector<VariantSet>& variants,
                                  const ResourceBudget& budget, const ExecutionOptions& options);

}  // namespace hqc
