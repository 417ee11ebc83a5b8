#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "hqc/circuit.hpp"

namespace hqc {

using Amplitude = std::complex<double>;
using Matrix2 = std::array<Amplitude, 4>;  // row-major

/// 2x2 unitary of a single-qubit kind.
Matrix2 single_qubit_matrix(GateKind kind, const std::vector<double>& params);

/// Dense state over n qubits; basis index bit q is qubit q.
class StateVector {
 public:
  explicit StateVector(int num_qubits);

  int num_qubits() const { return n_; }
  const std::vector<Amplitude>& amplitudes() const { return amp_; }

  void apply(const Gate& g);
  void apply_matrix(const Matrix2& m, int q);
  void apply_pauli(int pauli, int q);  // 1 = X, 2 = Y, 3 = Z

  /// Born probabilities marginalised onto `measured`; outcome bit j is the
  /// value of qubit measured[j].
  std::vector<double> marginal(std::span<const int> measured) const;

 private:
  void apply_controlled(const Matrix2& m, int control, int target);

  int n_;
  std::vector<Amplitude> amp_;
};

}  // namespace hqc
