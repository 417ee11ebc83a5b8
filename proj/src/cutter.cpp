#include "hqc/cutter.hpp"

#include <algorithm>
#include <map>

namespace hqc {

std::vector<int> Subcircuit::qubit_map() const {
  std::vector<int> m;
  m.reserve(wires.size());
  for (const auto& w : wires) m.push_back(w.qubit);
  return m;
}

std::vector<int> Subcircuit::measured_wires() const {
  std::vector<int> m = output_wires;
  std::vector<std::pair<int, int>> cut_wires;
  for (std::size_t w = 0; w < wires.size(); ++w) {
    if (wires[w].out_cut >= 0) cut_wires.push_back({wires[w].out_cut, static_cast<int>(w)});
  }
  std::sort(cut_wires.begin(), cut_wires.end());
  for (const auto& [cut, w] : cut_wires) m.push_back(w);
  return m;
}

std::size_t SubcircuitSet::max_width() const {
  std::size_t m = 0;
  for (const auto& s : subcircuits) m = std::max(m, s.width());
  return m;
}

SubcircuitSet extract_subcircuits(const Circuit& scheduled, const std::vector<int>& gate_part) {
  if (!scheduled.scheduled()) throw CutError("extraction requires a scheduled circuit");
  if (gate_part.size() != scheduled.size()) throw CutError("gate part map does not match the circuit");

  // dense renumbering of the parts in use
  std::map<int, int> dense;
  for (int p : gate_part) {
    if (p < 0) throw CutError("negative part id");
    dense.emplace(p, 0);
  }
  int next_id = 0;
  for (auto& [p, id] : dense) id = next_id++;

  SubcircuitSet out;
  out.source = scheduled;
  out.gate_part.reserve(gate_part.size());
  for (int p : gate_part) out.gate_part.push_back(dense.at(p));
  out.subcircuits.resize(static_cast<std::size_t>(next_id));
  for (int i = 0; i < next_id; ++i) out.subcircuits[static_cast<std::size_t>(i)].id = i;

  const auto& gates = scheduled.gates();
  // wire_of[g][k]: local wire carrying operand k of gate g
  std::vector<std::vector<int>> wire_of(gates.size());
  for (std::size_t g = 0; g < gates.size(); ++g) wire_of[g].assign(gates[g].qubits.size(), -1);

  std::vector<std::vector<std::pair<int, int>>> on_qubit(static_cast<std::size_t>(scheduled.num_qubits()));
  for (std::size_t g = 0; g < gates.size(); ++g) {
    for (std::size_t k = 0; k < gates[g].qubits.size(); ++k) {
      on_qubit[static_cast<std::size_t>(gates[g].qubits[k])].push_back({static_cast<int>(g), static_cast<int>(k)});
    }
  }

  for (int q = 0; q < scheduled.num_qubits(); ++q) {
    const auto& seq = on_qubit[static_cast<std::size_t>(q)];
    int prev_part = -1;
    int prev_wire = -1;
    int prev_time = -1;
    for (const auto& [g, k] : seq) {
      const int part = out.gate_part[static_cast<std::size_t>(g)];
      auto& sub = out.subcircuits[static_cast<std::size_t>(part)];
      if (part != prev_part) {
        LocalWire w;
        w.qubit = q;
        const int wire = static_cast<int>(sub.wires.size());
        if (prev_part != -1) {
          CutPoint cut;
          cut.id = static_cast<int>(out.cuts.size());
          cut.qubit = q;
          cut.upstream = {prev_part, prev_wire, prev_time};
          cut.downstream = {part, wire, gates[static_cast<std::size_t>(g)].time_step};
          out.subcircuits[static_cast<std::size_t>(prev_part)].wires[static_cast<std::size_t>(prev_wire)].out_cut = cut.id;
          out.subcircuits[static_cast<std::size_t>(prev_part)].out_cuts.push_back(cut.id);
          w.in_cut = cut.id;
          sub.in_cuts.push_back(cut.id);
          out.cuts.push_back(cut);
        }
        sub.wires.push_back(w);
        prev_part = part;
        prev_wire = wire;
      }
      wire_of[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)] = prev_wire;
      prev_time = gates[static_cast<std::size_t>(g)].time_step;
    }
  }

  for (auto& sub : out.subcircuits) {
    std::sort(sub.out_cuts.begin(), sub.out_cuts.end());
    std::sort(sub.in_cuts.begin(), sub.in_cuts.end());
    sub.circuit = Circuit(static_cast<int>(sub.wires.size()), scheduled.name() + ".part" + std::to_string(sub.id));
    for (std::size_t w = 0; w < sub.wires.size(); ++w) {
      if (sub.wires[w].out_cut < 0) sub.output_wires.push_back(static_cast<int>(w));
    }
  }
  for (std::size_t g = 0; g < gates.size(); ++g) {
    auto& sub = out.subcircuits[static_cast<std::size_t>(out.gate_part[g])];
    sub.gate_indices.push_back(static_cast<int>(g));
    sub.circuit.add(gates[g].kind, wire_of[g], gates[g].params);
  }
  for (auto& sub : out.subcircuits) sub.circuit = schedule_asap(sub.circuit);
  return out;
}

SubcircuitSet extract_subcircuits(const Circuit& scheduled, const TemporalHypergraph& hg,
                                  const PartitionAssignment& assignment) {
  const auto& gate_nodes = hg.gate_nodes();
  if (gate_nodes.size() != scheduled.size()) throw CutError("hypergraph was not built from this circuit");
  std::vector<int> gate_part(scheduled.size());
  for (std::size_t g = 0; g < gate_nodes.size(); ++g) {
    const int p = assignment.part_of.at(static_cast<std::size_t>(gate_nodes[g].front()));
    for (int v : gate_nodes[g]) {
      if (assignment.part_of.at(static_cast<std::size_t>(v)) != p) {
        throw CutError("assignment splits gate " + std::to_string(g));
      }
    }
    gate_part[g] = p;
  }
  return extract_subcircuits(scheduled, gate_part);
}

PartitionAssignment assignment_from_subcircuits(const SubcircuitSet& subs, const TemporalHypergraph& hg) {
  PartitionAssignment a;
  a.num_parts = static_cast<int>(subs.subcircuits.size());
  a.part_of.assign(hg.num_nodes(), -1);
  const auto& gate_nodes = hg.gate_nodes();
  for (std::size_t g = 0; g < gate_nodes.size(); ++g) {
    for (int v : gate_nodes[g]) a.part_of[static_cast<std::size_t>(v)] = subs.gate_part.at(g);
  }
  return a;
}

char basis_char(Basis b) {
  switch (b) {
    case Basis::I: return 'I';
    case Basis::X: return 'X';
    case Basis::Y: return 'Y';
    case Basis::Z: return 'Z';
  }
  return '?';
}

char prep_char(Prep p) {
  switch (p) {
    case Prep::Zero: return '0';
    case Prep::One: return '1';
    case Prep::Plus: return 'p';
    case Prep::IPlus: return 'i';
  }
  return '?';
}

std::string VariantLabel::str() const {
  std::string s;
  for (Basis b : out) s += basis_char(b);
  s += '-';
  for (Prep p : in) s += prep_char(p);
  return s;
}

namespace {

constexpr Basis kMeasured[] = {Basis::Z, Basis::X, Basis::Y};

int measured_digit(Basis b) {
  switch (b) {
    case Basis::I:
    case Basis::Z: return 0;
    case Basis::X: return 1;
    case Basis::Y: return 2;
  }
  return 0;
}

int prep_digit(Prep p) { return static_cast<int>(p); }

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

int VariantSet::physical_index(const std::vector<Basis>& out, const std::vector<Prep>& in) const {
  if (out.size() != n_out_ || in.size() != n_in_) throw CutError("variant label has the wrong shape");
  // in-preparations vary slowest, out-bases fastest
  std::size_t idx = 0;
  for (Prep p : in) idx = idx * 4 + static_cast<std::size_t>(prep_digit(p));
  for (Basis b : out) idx = idx * 3 + static_cast<std::size_t>(measured_digit(b));
  return static_cast<int>(idx);
}

VariantSet enumerate_variants(const Subcircuit& s) {
  VariantSet vs;
  vs.n_out_ = s.out_cuts.size();
  vs.n_in_ = s.in_cuts.size();

  std::vector<int> out_wire(vs.n_out_);
  std::vector<int> in_wire(vs.n_in_);
  for (std::size_t w = 0; w < s.wires.size(); ++w) {
    const auto& lw = s.wires[w];
    if (lw.out_cut >= 0) {
      auto it = std::lower_bound(s.out_cuts.begin(), s.out_cuts.end(), lw.out_cut);
      out_wire[static_cast<std::size_t>(it - s.out_cuts.begin())] = static_cast<int>(w);
    }
    if (lw.in_cut >= 0) {
      auto it = std::lower_bound(s.in_cuts.begin(), s.in_cuts.end(), lw.in_cut);
      in_wire[static_cast<std::size_t>(it - s.in_cuts.begin())] = static_cast<int>(w);
    }
  }

  const std::size_t n_phys = ipow(4, vs.n_in_) * ipow(3, vs.n_out_);
  vs.physical.reserve(n_phys);
  for (std::size_t idx = 0; idx < n_phys; ++idx) {
    VariantLabel label;
    label.out.resize(vs.n_out_);
    label.in.resize(vs.n_in_);
    std::size_t r = idx;
    for (std::size_t i = vs.n_out_; i-- > 0;) {
      label.out[i] = kMeasured[r % 3];
      r /= 3;
    }
    for (std::size_t i = vs.n_in_; i-- > 0;) {
      label.in[i] = kPreps[r % 4];
      r /= 4;
    }

    Circuit c(static_cast<int>(s.width()), s.circuit.name() + ".var" + label.str());
    for (std::size_t i = 0; i < vs.n_in_; ++i) {
      const int w = in_wire[i];
      switch (label.in[i]) {
        case Prep::Zero: break;
        case Prep::One: c.add(GateKind::X, {w}); break;
        case Prep::Plus: c.add(GateKind::H, {w}); break;
        case Prep::IPlus:
          c.add(GateKind::H, {w});
          c.add(GateKind::S, {w});
          break;
      }
    }
    for (const auto& g : s.circuit.gates()) c.add(g.kind, g.qubits, g.params);
    for (std::size_t i = 0; i < vs.n_out_; ++i) {
      const int w = out_wire[i];
      if (label.out[i] == Basis::X) {
        c.add(GateKind::H, {w});
      } else if (label.out[i] == Basis::Y) {
        c.add(GateKind::Sdg, {w});
        c.add(GateKind::H, {w});
      }
    }
    vs.physical.push_back({std::move(label), schedule_asap(c)});
  }

  const std::size_t n_labels = ipow(4, vs.n_in_ + vs.n_out_);
  vs.labels.reserve(n_labels);
  vs.physical_of_label.reserve(n_labels);
  for (std::size_t idx = 0; idx < n_labels; ++idx) {
    VariantLabel label;
    label.out.resize(vs.n_out_);
    label.in.resize(vs.n_in_);
    std::size_t r = idx;
    for (std::size_t i = vs.n_out_; i-- > 0;) {
      label.out[i] = kBases[r % 4];
      r /= 4;
    }
    for (std::size_t i = vs.n_in_; i-- > 0;) {
      label.in[i] = kPreps[r % 4];
      r /= 4;
    }
    vs.physical_of_label.push_back(vs.physical_index(label.out, label.in));
    vs.labels.push_back(std::move(label));
  }
  return vs;
}

std::string variant_file_name(const std::string& name, int part, const VariantLabel& label) {
  return name + ".part" + std::to_string(part) + ".var" + label.str() + ".qasm";
}

}  // namespace hqc
