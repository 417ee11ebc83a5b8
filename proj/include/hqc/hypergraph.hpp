#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "hqc/circuit.hpp"

namespace hqc {

/// A qubit at one of the time steps where it takes part in a gate.
struct TemporalNode {
  int qubit = 0;
  int time = 0;
  auto operator<=>(const TemporalNode&) const = default;
};

enum class HyperedgeKind { Gate, Temporal };

struct Hyperedge {
  std::vector<int> nodes;  // node ids, ascending
  double weight = 0.0;
  HyperedgeKind kind = HyperedgeKind::Gate;
  int gate_index = -1;  // source gate for Gate hyperedges
};

inline constexpr double kTemporalWeight = 10.0;

/// Pairwise weight of a K-qubit gate hyperedge: 1000K/(K-1).
double gate_pair_weight(std::size_t arity);

class TemporalHypergraph {
 public:
  TemporalHypergraph() = default;
  /// Generic constructor; validates node ids and hyperedge sizes.
  TemporalHypergraph(std::vector<TemporalNode> nodes, std::vector<Hyperedge> hyperedges);

  const std::vector<TemporalNode>& nodes() const { return nodes_; }
  const std::vector<Hyperedge>& hyperedges() const { return hyperedges_; }
  std::size_t num_nodes() const { return nodes_.size(); }

  /// Node id of (qubit, time), or -1.
  int node_id(TemporalNode n) const;

  /// Node ids of each source gate, in operand order. Empty when built
  /// without a circuit.
  const std::vector<std::vector<int>>& gate_nodes() const { return gate_nodes_; }

  std::size_t count(HyperedgeKind kind) const;

 private:
  friend TemporalHypergraph build_hypergraph(const Circuit& c);

  std::vector<TemporalNode> nodes_;
  std::vector<Hyperedge> hyperedges_;
  std::map<TemporalNode, int> index_;
  std::vector<std::vector<int>> gate_nodes_;
};

/// One node per (qubit, participating time step), ordered by (qubit, time).
/// Multi-qubit gates become gate hyperedges; consecutive participations of a
/// qubit are joined by a temporal hyperedge of weight 10.
TemporalHypergraph build_hypergraph(const Circuit& scheduled);

struct WeightedEdge {
  int u = 0;  // u < v
  int v = 0;
  double weight = 0.0;
};

struct WeightedGraph {
  std::size_t num_nodes = 0;
  std::vector<WeightedEdge> edges;  // sorted by (u, v)
};

/// Replaces each hyperedge by a clique; a pair's weight is the mean weight of
/// all hyperedges that contain both endpoints.
WeightedGraph clique_expand(const TemporalHypergraph& hg);

/// Debug dump, one "u v weight" line per edge.
void write_edge_list(std::ostream& os, const WeightedGraph& g);

}  // namespace hqc
