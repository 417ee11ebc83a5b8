#include "hqc/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace hqc {

namespace {

struct GateInfo {
  GateKind kind;
  std::string_view name;
  std::size_t arity;
  std::size_t params;
};

constexpr std::array<GateInfo, 16> kGateTable{{
    {GateKind::H, "h", 1, 0},
    {GateKind::X, "x", 1, 0},
    {GateKind::Y, "y", 1, 0},
    {GateKind::Z, "z", 1, 0},
    {GateKind::S, "s", 1, 0},
    {GateKind::Sdg, "sdg", 1, 0},
    {GateKind::T, "t", 1, 0},
    {GateKind::Tdg, "tdg", 1, 0},
    {GateKind::RZ, "rz", 1, 1},
    {GateKind::RX, "rx", 1, 1},
    {GateKind::RY, "ry", 1, 1},
    {GateKind::CX, "cx", 2, 0},
    {GateKind::CZ, "cz", 2, 0},
    {GateKind::CP, "cp", 2, 1},
    {GateKind::Swap, "swap", 2, 0},
    {GateKind::CCX, "ccx", 3, 0},
}};

const GateInfo& info(GateKind kind) {
  return kGateTable[static_cast<std::size_t>(kind)];
}

bool is_multiple_of(double angle, double unit) {
  const double k = std::round(angle / unit);
  return std::abs(angle - k * unit) <= 1e-12;
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_from_name(std::string_view name) {
  for (const auto& g : kGateTable) {
    if (g.name == name) return g.kind;
  }
  return std::nullopt;
}

std::size_t gate_arity(GateKind kind) { return info(kind).arity; }
std::size_t gate_param_count(GateKind kind) { return info(kind).params; }

GateClass classify_gate(GateKind kind, const std::vector<double>& params) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  switch (kind) {
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::CCX:
      return GateClass::NonClifford;
    case GateKind::RZ:
    case GateKind::RX:
    case GateKind::RY:
      return is_multiple_of(params.at(0), kHalfPi) ? GateClass::Clifford
                                                   : GateClass::NonClifford;
    case GateKind::CP:
      return is_multiple_of(params.at(0), std::numbers::pi) ? GateClass::Clifford
                                                            : GateClass::NonClifford;
    default:
      return GateClass::Clifford;
  }
}

Circuit::Circuit(int num_qubits, std::string name) : num_qubits_(num_qubits), name_(std::move(name)) {
  if (num_qubits < 0) throw CircuitError("qubit count must be nonnegative");
}

Circuit& Circuit::add(GateKind kind, std::vector<int> qubits, std::vector<double> params) {
  Gate g;
  g.kind = kind;
  g.qubits = std::move(qubits);
  g.params = std::move(params);
  return add(std::move(g));
}

Circuit& Circuit::add(Gate gate) {
  const auto& gi = info(gate.kind);
  if (gate.qubits.size() != gi.arity) {
    throw CircuitError(std::string(gi.name) + " expects " + std::to_string(gi.arity) + " operand(s)");
  }
  if (gate.params.size() != gi.params) {
    throw CircuitError(std::string(gi.name) + " expects " + std::to_string(gi.params) + " parameter(s)");
  }
  for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
    const int q = gate.qubits[i];
    if (q < 0 || q >= num_qubits_) {
      throw CircuitError("qubit index " + std::to_string(q) + " out of range for " +
                         std::to_string(num_qubits_) + " qubit(s)");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gate.qubits[j] == q) throw CircuitError("repeated operand q[" + std::to_string(q) + "]");
    }
  }
  gate.time_step = -1;
  gates_.push_back(std::move(gate));
  scheduled_ = false;
  return *this;
}

std::size_t Circuit::count_single_qubit() const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [](const Gate& g) { return !g.is_multi_qubit(); }));
}

std::size_t Circuit::count_multi_qubit() const { return gates_.size() - count_single_qubit(); }

bool Circuit::has_non_clifford() const {
  return std::any_of(gates_.begin(), gates_.end(),
                     [](const Gate& g) { return g.gate_class() == GateClass::NonClifford; });
}

bool Circuit::structurally_equal(const Circuit& other) const {
  if (num_qubits_ != other.num_qubits_ || measure_all_ != other.measure_all_) return false;
  if (gates_.size() != other.gates_.size()) return false;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (!gates_[i].same_operation(other.gates_[i])) return false;
  }
  return true;
}

Circuit schedule_asap(const Circuit& c) {
  Circuit out = c;
  std::vector<int> last(static_cast<std::size_t>(c.num_qubits()), -1);
  int max_step = -1;
  for (auto& g : out.gates_) {
    int step = 0;
    for (int q : g.qubits) step = std::max(step, last[static_cast<std::size_t>(q)] + 1);
    g.time_step = step;
    for (int q : g.qubits) last[static_cast<std::size_t>(q)] = step;
    max_step = std::max(max_step, step);
  }
  out.depth_ = max_step + 1;
  out.scheduled_ = true;
  return out;
}

}  // namespace hqc
