#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hqc {

/// Gate kinds understood by the whole toolchain.
enum class GateKind {
  H, X, Y, Z, S, Sdg, T, Tdg,
  RZ, RX, RY,
  CX, CZ, CP, Swap,
  CCX,
};

enum class GateClass { Clifford, NonClifford };

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

/// Number of qubit operands the kind acts on.
std::size_t gate_arity(GateKind kind);
/// Number of real angle parameters the kind carries.
std::size_t gate_param_count(GateKind kind);

/// Clifford test. Rotations are Clifford at multiples of pi/2, cp only at
/// multiples of pi (cp(pi/2) is controlled-S).
GateClass classify_gate(GateKind kind, const std::vector<double>& params);

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Gate {
  GateKind kind{};
  std::vector<int> qubits;
  std::vector<double> params;
  int time_step = -1;  // -1 until scheduled

  bool is_multi_qubit() const { return qubits.size() >= 2; }
  GateClass gate_class() const { return classify_gate(kind, params); }

  /// Structural equality: kind, operands and parameters. Time steps are
  /// scheduling metadata and do not take part.
  bool same_operation(const Gate& other) const {
    return kind == other.kind && qubits == other.qubits && params == other.params;
  }
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_qubits, std::string name = {});

  int num_qubits() const { return num_qubits_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  bool measure_all() const { return measure_all_; }
  void set_measure_all(bool on) { measure_all_ = on; }

  /// Appends a gate after validating operands and parameter arity.
  Circuit& add(GateKind kind, std::vector<int> qubits, std::vector<double> params = {});
  Circuit& add(Gate gate);

  bool scheduled() const { return scheduled_; }
  /// 1 + max time step; 0 for an empty circuit. Only meaningful once scheduled.
  int depth() const { return depth_; }

  std::size_t count_single_qubit() const;
  std::size_t count_multi_qubit() const;
  bool has_non_clifford() const;

  /// Equality of qubit count, measurement flag and gate sequence
  /// (ignores name and time steps).
  bool structurally_equal(const Circuit& other) const;

 private:
  friend Circuit schedule_asap(const Circuit& c);

  int num_qubits_ = 0;
  std::string name_;
  std::vector<Gate> gates_;
  bool measure_all_ = false;
  bool scheduled_ = false;
  int depth_ = 0;
};

/// ASAP layering: each gate lands one step after the latest previous gate on
/// any of its operands.
Circuit schedule_asap(const Circuit& c);

}  // namespace hqc
