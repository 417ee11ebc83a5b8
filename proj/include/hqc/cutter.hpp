#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqc/circuit.hpp"
#include "hqc/hypergraph.hpp"
#include "hqc/partition.hpp"

namespace hqc {

class CutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExecMode { Classical, Quantum };

/// One side of a wire cut: the subcircuit, its local wire and the global time
/// step of the adjacent gate (last gate before the cut upstream, first gate
/// after it downstream).
struct CutEnd {
  int subcircuit = -1;
  int wire = -1;
  int time = -1;
};

struct CutPoint {
  int id = 0;
  int qubit = 0;
  CutEnd upstream;
  CutEnd downstream;
};

/// A maximal run of one qubit's gates inside one subcircuit. It starts in |0>
/// or from a cut preparation and ends in a final readout or a cut measurement.
struct LocalWire {
  int qubit = 0;
  int in_cut = -1;   // -1: qubit starts here in |0>
  int out_cut = -1;  // -1: this wire carries the qubit's final readout
};

struct Subcircuit {
  int id = 0;
  Circuit circuit;  // over local wires, scheduled
  std::vector<LocalWire> wires;
  std::vector<int> gate_indices;  // source gate indices, in source order
  std::vector<int> out_cuts;      // ascending cut ids measured here
  std::vector<int> in_cuts;       // ascending cut ids prepared here
  std::vector<int> output_wires;  // wires holding final readouts, ascending
  std::optional<ExecMode> mode;   // set by the executor

  std::size_t width() const { return wires.size(); }
  std::vector<int> qubit_map() const;
  /// Measured wires in classical-bit order: final readouts first, then
  /// out-cut wires by cut id.
  std::vector<int> measured_wires() const;
};

struct SubcircuitSet {
  Circuit source;               // scheduled source circuit
  std::vector<int> gate_part;   // source gate -> subcircuit id
  std::vector<Subcircuit> subcircuits;
  std::vector<CutPoint> cuts;

  int num_qubits() const { return source.num_qubits(); }
  std::size_t num_cuts() const { return cuts.size(); }
  std::size_t max_width() const;
};

/// Builds subcircuits from a per-gate part map. Part ids need not be dense;
/// unused ids are dropped and the rest renumbered in ascending order.
SubcircuitSet extract_subcircuits(const Circuit& scheduled, const std::vector<int>& gate_part);

/// Same, from a node assignment over build_hypergraph(scheduled). Throws
/// CutError when the assignment splits a gate.
SubcircuitSet extract_subcircuits(const Circuit& scheduled, const TemporalHypergraph& hg,
                                  const PartitionAssignment& assignment);

/// Node-level assignment equivalent to subs.gate_part.
PartitionAssignment assignment_from_subcircuits(const SubcircuitSet& subs, const TemporalHypergraph& hg);

enum class Basis { I, X, Y, Z };
enum class Prep { Zero, One, Plus, IPlus };

inline constexpr Basis kBases[] = {Basis::I, Basis::X, Basis::Y, Basis::Z};
inline constexpr Prep kPreps[] = {Prep::Zero, Prep::One, Prep::Plus, Prep::IPlus};

char basis_char(Basis b);
char prep_char(Prep p);  // '0', '1', 'p', 'i'

struct VariantLabel {
  std::vector<Basis> out;  // per out_cut, in out_cuts order
  std::vector<Prep> in;    // per in_cut, in in_cuts order

  bool operator==(const VariantLabel&) const = default;
  /// e.g. "XZ-0p"; "-" alone for a subcircuit without cuts.
  std::string str() const;
};

/// A concrete circuit to execute. I and Z labels share the Z-measured circuit,
/// so `label.out` only holds X, Y or Z here.
struct PhysicalVariant {
  VariantLabel label;
  Circuit circuit;
};

struct VariantSet {
  std::vector<PhysicalVariant> physical;
  std::vector<VariantLabel> labels;   // all 4^|out| * 4^|in| labels
  std::vector<int> physical_of_label; // parallel to labels

  /// Index of the physical variant measuring `out` (I folded into Z) under `in`.
  int physical_index(const std::vector<Basis>& out, const std::vector<Prep>& in) const;

 private:
  friend VariantSet enumerate_variants(const Subcircuit& s);
  std::size_t n_out_ = 0;
  std::size_t n_in_ = 0;
};

/// X measurement appends h, Y appends sdg then h; preparations prepend
/// nothing / x / h / h,s for |0>, |1>, |+>, |i>.
VariantSet enumerate_variants(const Subcircuit& s);

/// {name}.part{p}.var{label}.qasm
std::string variant_file_name(const std::string& name, int part, const VariantLabel& label);

}  // namespace hqc
