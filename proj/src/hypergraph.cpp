#include "hqc/hypergraph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hqc {

double gate_pair_weight(std::size_t arity) {
  if (arity < 2) throw std::invalid_argument("gate hyperedges need at least two qubits");
  const double k = static_cast<double>(arity);
  return 1000.0 * k / (k - 1.0);
}

TemporalHypergraph::TemporalHypergraph(std::vector<TemporalNode> nodes, std::vector<Hyperedge> hyperedges)
    : nodes_(std::move(nodes)), hyperedges_(std::move(hyperedges)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate temporal node");
    }
  }
  for (auto& e : hyperedges_) {
    std::sort(e.nodes.begin(), e.nodes.end());
    if (e.nodes.size() < 2) throw std::invalid_argument("hyperedge needs at least two nodes");
    if (std::adjacent_find(e.nodes.begin(), e.nodes.end()) != e.nodes.end()) {
      throw std::invalid_argument("hyperedge repeats a node");
    }
    if (e.nodes.front() < 0 || e.nodes.back() >= static_cast<int>(nodes_.size())) {
      throw std::invalid_argument("hyperedge references unknown node");
    }
    if (!(e.weight > 0.0)) throw std::invalid_argument("hyperedge weight must be positive");
  }
}

int TemporalHypergraph::node_id(TemporalNode n) const {
  auto it = index_.find(n);
  return it == index_.end() ? -1 : it->second;
}

std::size_t TemporalHypergraph::count(HyperedgeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(hyperedges_.begin(), hyperedges_.end(), [kind](const Hyperedge& e) { return e.kind == kind; }));
}

TemporalHypergraph build_hypergraph(const Circuit& c) {
  if (!c.scheduled()) throw CircuitError("build_hypergraph requires a scheduled circuit");

  std::vector<TemporalNode> nodes;
  for (const auto& g : c.gates()) {
    for (int q : g.qubits) nodes.push_back({q, g.time_step});
  }
  std::sort(nodes.begin(), nodes.end());

  TemporalHypergraph hg;
  hg.nodes_ = nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) hg.index_.emplace(nodes[i], static_cast<int>(i));

  hg.gate_nodes_.reserve(c.size());
  for (std::size_t gi = 0; gi < c.size(); ++gi) {
    const Gate& g = c.gates()[gi];
    std::vector<int> ids;
    for (int q : g.qubits) ids.push_back(hg.index_.at({q, g.time_step}));
    if (g.is_multi_qubit()) {
      Hyperedge e;
      e.nodes = ids;
      std::sort(e.nodes.begin(), e.nodes.end());
      e.weight = gate_pair_weight(g.qubits.size());
      e.kind = HyperedgeKind::Gate;
      e.gate_index = static_cast<int>(gi);
      hg.hyperedges_.push_back(std::move(e));
    }
    hg.gate_nodes_.push_back(std::move(ids));
  }
  // Nodes are sorted by (qubit, time), so consecutive ids on one qubit are
  // consecutive participations.
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i].qubit == nodes[i + 1].qubit) {
      Hyperedge e;
      e.nodes = {static_cast<int>(i), static_cast<int>(i + 1)};
      e.weight = kTemporalWeight;
      e.kind = HyperedgeKind::Temporal;
      hg.hyperedges_.push_back(std::move(e));
    }
  }
  return hg;
}

WeightedGraph clique_expand(const TemporalHypergraph& hg) {
  std::map<std::pair<int, int>, std::pair<double, int>> acc;
  for (const auto& e : hg.hyperedges()) {
    for (std::size_t i = 0; i < e.nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < e.nodes.size(); ++j) {
        auto& [sum, cnt] = acc[{e.nodes[i], e.nodes[j]}];
        sum += e.weight;
        ++cnt;
      }
    }
  }
  WeightedGraph g;
  g.num_nodes = hg.num_nodes();
  g.edges.reserve(acc.size());
  for (const auto& [pair, sc] : acc) {
    g.edges.push_back({pair.first, pair.second, sc.first / sc.second});
  }
  return g;
}

void write_edge_list(std::ostream& os, const WeightedGraph& g) {
  for (const auto& e : g.edges) os << e.u << ' ' << e.v << ' ' << e.weight << '\n';
}

}  // namespace hqc
