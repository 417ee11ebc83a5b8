#include <doctest.h>

#include <sstream>

#include "hqc/generators.hpp"
#include "hqc/hypergraph.hpp"

using namespace hqc;

namespace {

double weight_of(const WeightedGraph& g, int u, int v) {
  for (const auto& e : g.edges) {
    if (e.u == std::min(u, v) && e.v == std::max(u, v)) return e.weight;
  }
  return 0.0;
}

}  // namespace

TEST_CASE("gate pair weights") {
  CHECK(gate_pair_weight(2) == 2000.0);
  CHECK(gate_pair_weight(3) == 1500.0);
  CHECK_THROWS(gate_pair_weight(1));
}

TEST_CASE("ghz(3) hypergraph") {
  const auto hg = build_hypergraph(schedule_asap(make_ghz(3)));
  CHECK(hg.num_nodes() == 5);
  CHECK(hg.count(HyperedgeKind::Gate) == 2);
  CHECK(hg.count(HyperedgeKind::Temporal) == 2);
  CHECK(hg.node_id({1, 1}) >= 0);
  CHECK(hg.node_id({1, 2}) >= 0);
  CHECK(hg.node_id({2, 0}) == -1);
  for (const auto& e : hg.hyperedges()) {
    if (e.kind == HyperedgeKind::Temporal) CHECK(e.weight == kTemporalWeight);
  }
}

TEST_CASE("ccx expands to three pairs of 1500") {
  Circuit c(3);
  c.add(GateKind::CCX, {0, 1, 2});
  const auto g = clique_expand(build_hypergraph(schedule_asap(c)));
  REQUIRE(g.edges.size() == 3);
  for (const auto& e : g.edges) CHECK(e.weight == 1500.0);
}

TEST_CASE("clique expansion averages shared pairs") {
  std::vector<TemporalNode> nodes{{0, 0}, {1, 0}, {2, 0}};
  std::vector<Hyperedge> edges{{{0, 1}, 2000.0, HyperedgeKind::Gate, 0}, {{0, 1, 2}, 1500.0, HyperedgeKind::Gate, 1}};
  const auto g = clique_expand(TemporalHypergraph(nodes, edges));
  CHECK(weight_of(g, 0, 1) == 1750.0);
  CHECK(weight_of(g, 0, 2) == 1500.0);
  CHECK(weight_of(g, 1, 2) == 1500.0);

  std::vector<Hyperedge> reversed(edges.rbegin(), edges.rend());
  const auto g2 = clique_expand(TemporalHypergraph(nodes, reversed));
  REQUIRE(g2.edges.size() == g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) CHECK(g2.edges[i].weight == g.edges[i].weight);
}

TEST_CASE("pairwise hyperedges expand to themselves") {
  std::vector<TemporalNode> nodes{{0, 0}, {0, 1}, {1, 1}};
  std::vector<Hyperedge> edges{{{0, 1}, 10.0, HyperedgeKind::Temporal, -1}, {{1, 2}, 2000.0, HyperedgeKind::Gate, 0}};
  const auto g = clique_expand(TemporalHypergraph(nodes, edges));
  REQUIRE(g.edges.size() == 2);
  CHECK(weight_of(g, 0, 1) == 10.0);
  CHECK(weight_of(g, 1, 2) == 2000.0);

  std::ostringstream os;
  write_edge_list(os, g);
  CHECK(os.str() == "0 1 10\n1 2 2000\n");
}

TEST_CASE("node count and gate dominance on generator outputs") {
  for (int n = 2; n <= 12; ++n) {
    for (const auto& c : {make_ghz(n), make_qft(n), make_random(n, 5, 3)}) {
      const auto s = schedule_asap(c);
      const auto hg = build_hypergraph(s);
      std::size_t participations = 0;
      for (const auto& gate : s.gates()) participations += gate.qubits.size();
      CHECK(hg.num_nodes() == participations);
      const auto g = clique_expand(hg);
      for (const auto& e : hg.hyperedges()) {
        if (e.kind != HyperedgeKind::Gate) continue;
        CHECK(weight_of(g, e.nodes[0], e.nodes[1]) > 1000.0);
      }
    }
  }
}

TEST_CASE("hypergraph construction errors") {
  CHECK_THROWS(build_hypergraph(make_ghz(3)));
  CHECK_THROWS(TemporalHypergraph({{0, 0}}, {{{0}, 1.0, HyperedgeKind::Gate, 0}}));
  CHECK_THROWS(TemporalHypergraph({{0, 0}, {0, 0}}, {}));
  CHECK_THROWS(TemporalHypergraph({{0, 0}, {1, 0}}, {{{0, 1}, 0.0, HyperedgeKind::Gate, 0}}));
}
