#include <doctest.h>

#include "hqc/generators.hpp"
#include "hqc/metrics.hpp"

using namespace hqc;

namespace {

RunReport report_for(const Circuit& c, const std::vector<int>& parts, const std::vector<ExecMode>& modes) {
  static SubcircuitSet subs;
  static std::vector<Decision> decisions;
  subs = extract_subcircuits(schedule_asap(c), parts);
  decisions.clear();
  for (auto m : modes) decisions.push_back({m, m == ExecMode::Quantum ? DecisionReason::NonClifford : DecisionReason::WithinBudget});
  return build_report({c, subs, decisions, static_cast<int>(subs.subcircuits.size())});
}

}  // namespace

TEST_CASE("noise score") {
  CHECK(noise_score(1, 9, 10) == doctest::Approx(0.591));
  CHECK(format_2dp(noise_score(1, 9, 10)) == "0.59");
  CHECK(format_2dp(noise_score(1, 19, 20)) == "1.19");
  CHECK(format_2dp(noise_score(1, 29, 30)) == "1.79");
  CHECK(noise_score(0, 0, 0) == 0.0);
  NoiseParams p{0.1, 0.2, 0.3};
  CHECK(noise_score(1, 1, 1, p) == doctest::Approx(0.6));
}

TEST_CASE("noise score is additive over a gate split") {
  const auto c = make_random(6, 6, 2);
  const double whole = noise_score(c.count_single_qubit(), c.count_multi_qubit(), 6);
  const auto r = report_for(c, std::vector<int>(c.size(), 0), {ExecMode::Quantum});
  CHECK(r.quantum_noise == doctest::Approx(whole));
  CHECK(r.original_noise == doctest::Approx(whole));
}

TEST_CASE("all classical") {
  const auto r = report_for(make_ghz(10), std::vector<int>(10, 0), {ExecMode::Classical});
  CHECK(r.saved_percent == 100.0);
  CHECK(r.qubit_max == 0);
  CHECK(r.qubit_total == 10);
  CHECK(r.classical_total == 16384u);
  CHECK(r.classical_max == 16384u);
  CHECK(r.quantum_noise == 0.0);
  CHECK(r.classical_noise == doctest::Approx(0.591));
  CHECK(r.sampling_overhead == 1u);
}

TEST_CASE("all quantum") {
  const auto c = make_qft(6);
  const auto r = report_for(c, std::vector<int>(c.size(), 0), {ExecMode::Quantum});
  CHECK(r.saved_percent == 0.0);
  CHECK(r.qubit_max == 6);
  CHECK(r.classical_max == 0);
}

TEST_CASE("mixed flags") {
  const auto c = make_ghz(6);
  const auto r = report_for(c, {0, 0, 0, 1, 1, 1}, {ExecMode::Classical, ExecMode::Quantum});
  CHECK(r.cut_points == 1);
  CHECK(r.sampling_overhead == 4u);
  CHECK(r.saved_percent > 0.0);
  CHECK(r.saved_percent < 100.0);
  CHECK(r.qubit_max == r.subcircuits[1].width);
  CHECK(r.classical_max == memory_requirement(r.subcircuits[0].width));
  for (const auto& s : r.subcircuits) CHECK(s.memory_bytes == memory_requirement(s.width));
}

TEST_CASE("decision count must match") {
  const auto c = make_ghz(4);
  const auto subs = extract_subcircuits(schedule_asap(c), {0, 0, 1, 1});
  const std::vector<Decision> one{{}};
  CHECK_THROWS(build_report({c, subs, one, 2}));
}
