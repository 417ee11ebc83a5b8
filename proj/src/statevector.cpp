#include "hqc/statevector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hqc {

Matrix2 single_qubit_matrix(GateKind kind, const std::vector<double>& params) {
  using namespace std::complex_literals;
  const double r = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case GateKind::H: return {r, r, r, -r};
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::Y: return {0, -1i, 1i, 0};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::S: return {1, 0, 0, 1i};
    case GateKind::Sdg: return {1, 0, 0, -1i};
    case GateKind::T: return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
    case GateKind::Tdg: return {1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)};
    case GateKind::RZ: {
      const double h = params.at(0) / 2;
      return {std::polar(1.0, -h), 0, 0, std::polar(1.0, h)};
    }
    case GateKind::RX: {
      const double h = params.at(0) / 2;
      return {std::cos(h), -1i * std::sin(h), -1i * std::sin(h), std::cos(h)};
    }
    case GateKind::RY: {
      const double h = params.at(0) / 2;
      return {std::cos(h), -std::sin(h), std::sin(h), std::cos(h)};
    }
    default:
      throw std::invalid_argument("not a single-qubit gate");
  }
}

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 0 || num_qubits > 40) throw std::invalid_argument("unsupported statevector width");
  amp_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amp_[0] = 1.0;
}

void StateVector::apply_matrix(const Matrix2& m, int q) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (i & bit) continue;
    const Amplitude a0 = amp_[i];
    const Amplitude a1 = amp_[i | bit];
    amp_[i] = m[0] * a0 + m[1] * a1;
    amp_[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply_controlled(const Matrix2& m, int control, int target) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (!(i & cbit) || (i & tbit)) continue;
    const Amplitude a0 = amp_[i];
    const Amplitude a1 = amp_[i | tbit];
    amp_[i] = m[0] * a0 + m[1] * a1;
    amp_[i | tbit] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply_pauli(int pauli, int q) {
  static const Matrix2 kPaulis[] = {single_qubit_matrix(GateKind::X, {}), single_qubit_matrix(GateKind::Y, {}),
                                    single_qubit_matrix(GateKind::Z, {})};
  if (pauli < 1 || pauli > 3) return;
  apply_matrix(kPaulis[pauli - 1], q);
}

void StateVector::apply(const Gate& g) {
  const auto& q = g.qubits;
  switch (g.kind) {
    case GateKind::CX:
      apply_controlled(single_qubit_matrix(GateKind::X, {}), q[0], q[1]);
      break;
    case GateKind::CZ:
      apply_controlled(single_qubit_matrix(GateKind::Z, {}), q[0], q[1]);
      break;
    case GateKind::CP:
      apply_controlled({1, 0, 0, std::polar(1.0, g.params.at(0))}, q[0], q[1]);
      break;
    case GateKind::Swap: {
      const std::size_t a = std::size_t{1} << q[0];
      const std::size_t b = std::size_t{1} << q[1];
      for (std::size_t i = 0; i < amp_.size(); ++i) {
        if ((i & a) && !(i & b)) std::swap(amp_[i], amp_[(i & ~a) | b]);
      }
      break;
    }
    case GateKind::CCX: {
      const std::size_t c0 = std::size_t{1} << q[0];
      const std::size_t c1 = std::size_t{1} << q[1];
      const std::size_t t = std::size_t{1} << q[2];
      for (std::size_t i = 0; i < amp_.size(); ++i) {
        if ((i & c0) && (i & c1) && !(i & t)) std::swap(amp_[i], amp_[i | t]);
      }
      break;
    }
    default:
      apply_matrix(single_qubit_matrix(g.kind, g.params), q[0]);
  }
}

std::vector<double> StateVector::marginal(std::span<const int> measured) const {
  std::vector<double> probs(std::size_t{1} << measured.size(), 0.0);
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    const double p = std::norm(amp_[i]);
    if (p == 0.0) continue;
    std::size_t k = 0;
    for (std::size_t j = 0; j < measured.size(); ++j) {
      if (i >> measured[j] & 1U) k |= std::size_t{1} << j;
    }
    probs[k] += p;
  }
  return probs;
}

}  // namespace hqc
