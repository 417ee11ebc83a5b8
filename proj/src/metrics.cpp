#include "hqc/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "hqc/partition.hpp"

namespace hqc {

double noise_score(std::size_t single_gates, std::size_t multi_gates, std::size_t qubits, const NoiseParams& p) {
  return static_cast<double>(single_gates) * p.eps_single + static_cast<double>(multi_gates) * p.eps_multi +
         static_cast<double>(qubits) * p.gamma;
}

RunReport build_report(const ReportInputs& in) {
  if (in.decisions.size() != in.subcircuits.subcircuits.size()) {
    throw std::invalid_argument("one decision per subcircuit is required");
  }
  RunReport r;
  r.circuit = in.original.name();
  r.num_qubits = in.original.num_qubits();
  r.k = in.k;
  r.cut_points = in.subcircuits.num_cuts();
  r.sampling_overhead = sampling_overhead(r.cut_points);
  r.original_noise = noise_score(in.original.count_single_qubit(), in.original.count_multi_qubit(),
                                 static_cast<std::size_t>(in.original.num_qubits()), in.noise);
  r.qubit_total = static_cast<std::size_t>(in.original.num_qubits());
  r.classical_total = memory_requirement(r.qubit_total);

  for (std::size_t i = 0; i < in.subcircuits.subcircuits.size(); ++i) {
    const auto& s = in.subcircuits.subcircuits[i];
    SubcircuitReport sr;
    sr.id = s.id;
    sr.mode = in.decisions[i].mode;
    sr.reason = in.decisions[i].reason;
    sr.width = s.width();
    sr.single_gates = s.circuit.count_single_qubit();
    sr.multi_gates = s.circuit.count_multi_qubit();
    sr.noise = noise_score(sr.single_gates, sr.multi_gates, sr.width, in.noise);
    sr.memory_bytes = memory_requirement(sr.width);
    std::set<int> qs;
    for (const auto& w : s.wires) qs.insert(w.qubit);
    sr.qubits.assign(qs.begin(), qs.end());
    sr.physical_variants = 1;
    for (std::size_t c = 0; c < s.out_cuts.size(); ++c) sr.physical_variants *= 3;
    for (std::size_t c = 0; c < s.in_cuts.size(); ++c) sr.physical_variants *= 4;

    if (sr.mode == ExecMode::Quantum) {
      r.quantum_noise += sr.noise;
      r.qubit_max = std::max(r.qubit_max, sr.width);
    } else {
      r.classical_max = std::max(r.classical_max, sr.memory_bytes);
    }
    r.subcircuits.push_back(std::move(sr));
  }

  r.classical_noise = std::max(0.0, r.original_noise - r.quantum_noise);
  if (r.original_noise > 0.0) {
    r.saved_percent = std::clamp(100.0 * (1.0 - r.quantum_noise / r.original_noise), 0.0, 100.0);
  }
  return r;
}

std::string format_2dp(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace hqc
