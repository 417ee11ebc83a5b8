#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "hqc/circuit.hpp"
#include "hqc/generators.hpp"
#include "hqc/qasm.hpp"

using namespace hqc;

namespace {

// Longest chain of gates sharing a qubit, over every earlier gate.
int dag_depth(const Circuit& c) {
  const auto& g = c.gates();
  std::vector<int> len(g.size(), 1);
  int best = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const bool shared = std::any_of(g[i].qubits.begin(), g[i].qubits.end(), [&](int q) {
        return std::find(g[j].qubits.begin(), g[j].qubits.end(), q) != g[j].qubits.end();
      });
      if (shared) len[j] = std::max(len[j], len[i] + 1);
    }
    best = std::max(best, len[j]);
  }
  return best;
}

std::vector<Circuit> generator_outputs(int n) {
  std::vector<Circuit> out{make_ghz(n), make_qft(n), make_random(n, 6, static_cast<std::uint64_t>(n))};
  if (n >= 2) out.push_back(make_bv(n));
  return out;
}

}  // namespace

TEST_CASE("parse a two-gate program") {
  const auto c = parse_qasm("qreg q[2]; h q[0]; cx q[0],q[1];");
  CHECK(c.num_qubits() == 2);
  REQUIRE(c.size() == 2);
  CHECK(c.gates()[0].kind == GateKind::H);
  CHECK(c.gates()[0].qubits == std::vector<int>{0});
  CHECK(c.gates()[1].kind == GateKind::CX);
  CHECK(c.gates()[1].qubits == std::vector<int>{0, 1});
  CHECK_FALSE(c.measure_all());
}

TEST_CASE("parse rejects unsupported gates with a position") {
  try {
    parse_qasm("qreg q[1];\nu3(0.1,0.2,0.3) q[0];");
    FAIL("expected an error");
  } catch (const UnsupportedGateError& e) {
    CHECK(e.gate() == "u3");
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_qasm("qreg q[2]; cx q[0],q[2];"), QasmError);
  CHECK_THROWS_AS(parse_qasm("qreg q[2]; qreg r[2];"), QasmError);
  CHECK_THROWS_AS(parse_qasm("qreg q[2]; h q[0]"), QasmError);
  CHECK_THROWS_AS(parse_qasm("h q[0];"), QasmError);
  CHECK_THROWS_AS(parse_qasm("qreg q[2]; creg c[2]; measure q -> c; h q[0];"), QasmError);
  CHECK_THROWS_AS(parse_qasm("qreg q[2]; cx q[1],q[1];"), QasmError);
}

TEST_CASE("parse header, angles, barrier and trailing measurement") {
  const auto c = parse_qasm(
      "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\n"
      "rz(pi/4) q[1];\ncp(-pi/2) q[0],q[2];\nbarrier q;\nmeasure q -> c;\n");
  REQUIRE(c.size() == 2);
  CHECK(c.gates()[0].params[0] == doctest::Approx(std::numbers::pi / 4));
  CHECK(c.gates()[1].params[0] == doctest::Approx(-std::numbers::pi / 2));
  CHECK(c.measure_all());
}

TEST_CASE("emit") {
  Circuit one(1);
  one.add(GateKind::H, {0});
  const auto text = emit_qasm(one);
  CHECK(text.find("qreg q[1];\nh q[0];") != std::string::npos);

  const auto empty = emit_qasm(Circuit(3));
  CHECK(empty.find("qreg q[3];") != std::string::npos);
  CHECK(parse_qasm(empty).empty());
}

TEST_CASE("emit then parse is the identity on generator outputs") {
  for (int n = 1; n <= 32; ++n) {
    for (const auto& c : generator_outputs(n)) {
      CHECK(parse_qasm(emit_qasm(c)).structurally_equal(c));
    }
  }
}

TEST_CASE("ASAP scheduling") {
  Circuit c(2);
  c.add(GateKind::H, {0}).add(GateKind::CX, {0, 1});
  auto s = schedule_asap(c);
  CHECK(s.gates()[0].time_step == 0);
  CHECK(s.gates()[1].time_step == 1);
  CHECK(s.depth() == 2);

  Circuit p(2);
  p.add(GateKind::H, {0}).add(GateKind::H, {1});
  s = schedule_asap(p);
  CHECK(s.gates()[0].time_step == 0);
  CHECK(s.gates()[1].time_step == 0);
  CHECK(schedule_asap(Circuit(3)).depth() == 0);
}

TEST_CASE("scheduling is idempotent and matches the dependency DAG") {
  for (int n = 1; n <= 10; ++n) {
    for (const auto& c : generator_outputs(n)) {
      const auto once = schedule_asap(c);
      const auto twice = schedule_asap(once);
      REQUIRE(once.size() == twice.size());
      for (std::size_t i = 0; i < once.size(); ++i) CHECK(once.gates()[i].time_step == twice.gates()[i].time_step);
      CHECK(once.depth() == dag_depth(c));
    }
  }
  CHECK(schedule_asap(make_qft(5)).depth() == dag_depth(make_qft(5)));
}

TEST_CASE("gate classification") {
  const double pi = std::numbers::pi;
  CHECK(classify_gate(GateKind::T, {}) == GateClass::NonClifford);
  CHECK(classify_gate(GateKind::CCX, {}) == GateClass::NonClifford);
  CHECK(classify_gate(GateKind::H, {}) == GateClass::Clifford);
  CHECK(classify_gate(GateKind::Swap, {}) == GateClass::Clifford);
  CHECK(classify_gate(GateKind::RZ, {pi / 2}) == GateClass::Clifford);
  CHECK(classify_gate(GateKind::RZ, {-3 * pi / 2}) == GateClass::Clifford);
  CHECK(classify_gate(GateKind::RX, {pi / 4}) == GateClass::NonClifford);
  CHECK(classify_gate(GateKind::CP, {pi}) == GateClass::Clifford);
  CHECK(classify_gate(GateKind::CP, {pi / 2}) == GateClass::NonClifford);
  CHECK(classify_gate(GateKind::CP, {pi / 4}) == GateClass::NonClifford);
}

TEST_CASE("generators") {
  const auto ghz3 = make_ghz(3);
  REQUIRE(ghz3.size() == 3);
  CHECK(ghz3.gates()[0].kind == GateKind::H);
  CHECK(ghz3.gates()[1].qubits == std::vector<int>{0, 1});
  CHECK(ghz3.gates()[2].qubits == std::vector<int>{1, 2});

  for (int n = 1; n <= 32; ++n) {
    const auto g = make_ghz(n);
    CHECK(g.count_single_qubit() == 1);
    CHECK(g.count_multi_qubit() == static_cast<std::size_t>(n - 1));
    const auto q = make_qft(n);
    CHECK(q.count_single_qubit() == static_cast<std::size_t>(n));
    CHECK(q.count_multi_qubit() == static_cast<std::size_t>(n * (n - 1) / 2 + n / 2));
    if (n >= 3) CHECK(q.has_non_clifford());
  }

  CHECK(make_random(4, 5, 7).structurally_equal(make_random(4, 5, 7)));
  CHECK_FALSE(make_random(6, 5, 7).structurally_equal(make_random(6, 5, 8)));

  const auto bv = make_bv(4, std::string("101"));
  CHECK(bv.num_qubits() == 4);
  CHECK(bv.count_multi_qubit() == 2);
  CHECK(make_bv(10).count_multi_qubit() == 9);
  CHECK_FALSE(make_bv(10).has_non_clifford());

  CHECK_THROWS(generate(BenchmarkKind::Random, 4, {}));
  GeneratorOptions bad;
  bad.secret = "11";
  CHECK_THROWS(generate(BenchmarkKind::BV, 4, bad));
  CHECK_THROWS(generate(BenchmarkKind::GHZ, 0, {}));
}
