#include <doctest.h>

#include "hqc/generators.hpp"
#include "hqc/partition.hpp"

using namespace hqc;

namespace {

WeightedGraph two_cliques() {
  WeightedGraph g;
  g.num_nodes = 8;
  for (int base : {0, 4}) {
    for (int u = base; u < base + 4; ++u) {
      for (int v = u + 1; v < base + 4; ++v) g.edges.push_back({u, v, 2000.0});
    }
  }
  g.edges.push_back({3, 4, 10.0});
  std::sort(g.edges.begin(), g.edges.end(), [](auto& a, auto& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  return g;
}

// Gate part per node for ghz(4): nodes ordered by (qubit, time).
PartitionAssignment by_gate(const TemporalHypergraph& hg, const std::vector<int>& gate_part) {
  PartitionAssignment a;
  a.part_of.assign(hg.num_nodes(), 0);
  for (std::size_t g = 0; g < hg.gate_nodes().size(); ++g) {
    for (int v : hg.gate_nodes()[g]) a.part_of[static_cast<std::size_t>(v)] = gate_part[g];
  }
  a.num_parts = *std::max_element(gate_part.begin(), gate_part.end()) + 1;
  return a;
}

}  // namespace

TEST_CASE("balance bound") {
  CHECK(max_part_size(10, 2) == 6);
  CHECK(max_part_size(20, 2) == 11);
  CHECK(max_part_size(40, 2) == 21);
  CHECK(max_part_size(9, 3) == 4);
  CHECK(max_part_size(12, 4) == 4);
  CHECK_THROWS(max_part_size(10, 0));

  PartitionAssignment a{{0, 0, 1, 1}, 2};
  CHECK(is_balanced(a));
  a.part_of = {0, 0, 0, 1};
  CHECK(is_balanced(a));
  a.part_of = {0, 0, 0, 0, 0, 1};
  CHECK_FALSE(is_balanced(a));
  a.part_of = {0, 0, 0, 0};
  CHECK_FALSE(is_balanced(a));
}

TEST_CASE("two cliques split at the light bridge") {
  const auto g = two_cliques();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = partition_k(g, 2, seed);
    CHECK(a.num_parts == 2);
    CHECK(is_balanced(a));
    CHECK(cut_weight(g, a) == 10.0);
  }
}

TEST_CASE("K equal to the node count isolates every node") {
  const auto g = two_cliques();
  const auto a = partition_k(g, 8, 1);
  auto sizes = a.part_sizes();
  CHECK(std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 1; }));
  CHECK_THROWS_AS(partition_k(g, 9, 1), PartitionError);
  CHECK_THROWS_AS(partition_k(g, 1, 1), PartitionError);
}

TEST_CASE("partitioning is deterministic in the seed") {
  const auto hg = build_hypergraph(schedule_asap(make_random(12, 10, 4)));
  const auto g = clique_expand(hg);
  for (int k = 2; k <= 6; ++k) {
    const auto a = partition_k(g, k, 42);
    CHECK(a == partition_k(g, k, 42));
    CHECK(is_balanced(a));
  }
}

TEST_CASE("gate colocation repair") {
  const auto hg = build_hypergraph(schedule_asap(make_ghz(3)));
  // nodes: (0,0) (0,1) (1,1) (1,2) (2,2); split cx(0,1) 1/1 -> lowest part
  PartitionAssignment a{{0, 0, 1, 1, 1}, 2};
  CHECK(count_gate_violations(hg, a) == 1);
  const auto r = repair_gate_colocation(hg, a);
  CHECK(count_gate_violations(hg, r) == 0);
  CHECK(r.part_of[static_cast<std::size_t>(hg.node_id({1, 1}))] == 0);

  Circuit c(3);
  c.add(GateKind::CCX, {0, 1, 2});
  const auto hg3 = build_hypergraph(schedule_asap(c));
  const auto r3 = repair_gate_colocation(hg3, PartitionAssignment{{1, 0, 1}, 2});
  CHECK(r3.part_of == std::vector<int>{1, 1, 1});
}

TEST_CASE("cut point counting") {
  const auto s = schedule_asap(make_ghz(4));
  const auto hg = build_hypergraph(s);
  CHECK(count_cut_points(hg, by_gate(hg, {0, 0, 0, 0})) == 0);
  CHECK(count_cut_points(hg, by_gate(hg, {0, 0, 1, 1})) == 1);
  CHECK(count_cut_points(hg, by_gate(hg, {0, 1, 0, 1})) == 3);
  PartitionAssignment split{std::vector<int>(hg.num_nodes(), 0), 2};
  split.part_of[1] = 1;
  CHECK_THROWS_AS(count_cut_points(hg, split), PartitionError);
}

TEST_CASE("sampling overhead") {
  CHECK(sampling_overhead(0) == 1u);
  CHECK(sampling_overhead(1) == 4u);
  CHECK(sampling_overhead(5) == 1024u);
  CHECK(sampling_overhead(31) == std::uint64_t{1} << 62);
  CHECK_FALSE(sampling_overhead(32).has_value());
}
