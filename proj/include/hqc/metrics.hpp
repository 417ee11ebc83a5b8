#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hqc/cutter.hpp"
#include "hqc/executor.hpp"

namespace hqc {

/// Per-gate error rates and the per-qubit crosstalk factor of the noise score.
struct NoiseParams {
  double eps_single = 0.001;
  double eps_multi = 0.01;
  double gamma = 0.05;
};

/// N = S_single * eps_single + S_multi * eps_multi + Q * gamma.
double noise_score(std::size_t single_gates, std::size_t multi_gates, std::size_t qubits,
                   const NoiseParams& params = {});

struct SubcircuitReport {
  int id = 0;
  ExecMode mode = ExecMode::Classical;
  DecisionReason reason = DecisionReason::WithinBudget;
  std::size_t width = 0;
  std::size_t single_gates = 0;
  std::size_t multi_gates = 0;
  double noise = 0.0;
  std::uint64_t memory_bytes = 0;
  std::vector<int> qubits;  // distinct global qubits, ascending
  std::size_t physical_variants = 0;
};

struct RunReport {
  std::string circuit;
  int num_qubits = 0;
  int k = 1;
  std::size_t cut_points = 0;
  std::optional<std::uint64_t> sampling_overhead;  // nullopt: above 2^63 - 1
  std::vector<SubcircuitReport> subcircuits;

  double original_noise = 0.0;
  double quantum_noise = 0.0;
  double classical_noise = 0.0;  // original minus quantum, floored at 0
  double saved_percent = 0.0;
  std::size_t qubit_total = 0;
  std::size_t qubit_max = 0;       // widest quantum subcircuit
  std::uint64_t classical_total = 0;
  std::uint64_t classical_max = 0; // largest classical state
};

struct ReportInputs {
  const Circuit& original;
  const SubcircuitSet& subcircuits;
  const std::vector<Decision>& decisions;  // parallel to subcircuits
  int k = 1;
  NoiseParams noise{};
};

/// Aggregates one pipeline run. Saved noise is 100 * (1 - quantum/original)
/// clamped to [0, 100], and 0 when the original score is 0.
RunReport build_report(const ReportInputs& in);

/// Two-decimal rendering used by the CSV tables.
std::string format_2dp(double v);

}  // namespace hqc
