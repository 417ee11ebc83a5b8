// Acceptance checks: one PASS/FAIL line per criterion.
// Usage: hqc_acceptance <path-to-hqc-cli>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

#include <json.hpp>

#include "hqc/generators.hpp"
#include "hqc/metrics.hpp"
#include "hqc/pipeline.hpp"
#include "hqc/sweep.hpp"

#include "brute_partition.hpp"
#include "support.hpp"

using namespace hqc;
namespace fs = std::filesystem;

namespace {

constexpr double kExactTvd = 1e-9;
constexpr double kSampledTvd = 0.05;
constexpr double kSampledPassRate = 0.95;
constexpr int kSampledSeeds = 40;
constexpr int kFuzzCircuits = 1000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s limit)";
  }
  if (!o.pass) ++failures;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " [" << buf << "] "
            << o.detail << std::endl;
}

Circuit named(Circuit c, std::string name) {
  c.set_name(std::move(name));
  return c;
}

Circuit bell() {
  Circuit c(2, "bell");
  c.add(GateKind::H, {0}).add(GateKind::CX, {0, 1});
  return c;
}

Circuit disconnected(int a, int b, std::uint64_t seed) {
  // two random blocks on disjoint qubit ranges, interleaved
  const auto left = make_random(a, 4, seed);
  const auto right = make_random(b, 4, seed + 100);
  Circuit c(a + b, "split" + std::to_string(a) + "+" + std::to_string(b) + "s" + std::to_string(seed));
  const std::size_t n = std::max(left.size(), right.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i < left.size()) c.add(left.gates()[i]);
    if (i < right.size()) {
      Gate g = right.gates()[i];
      for (int& q : g.qubits) q += a;
      c.add(g);
    }
  }
  return c;
}

/// n <= 8 fixture suite shared by the partitioner and overhead criteria.
std::vector<Circuit> small_fixtures() {
  std::vector<Circuit> fx;
  for (int n = 4; n <= 8; ++n) {
    fx.push_back(named(make_ghz(n), "ghz" + std::to_string(n)));
    fx.push_back(named(make_bv(n), "bv" + std::to_string(n)));
  }
  for (int n = 4; n <= 6; ++n) fx.push_back(named(make_qft(n), "qft" + std::to_string(n)));
  for (int a : {2, 3, 4}) {
    for (std::uint64_t s = 1; s <= 3; ++s) fx.push_back(disconnected(a, 8 - a, s));
  }
  for (int n = 4; n <= 8; ++n) {
    for (int d = 2; d <= 6; ++d) {
      for (std::uint64_t s = 1; s <= 10; ++s) {
        fx.push_back(named(make_random(n, d, s), "random" + std::to_string(n) + "d" + std::to_string(d) + "s" +
                                                     std::to_string(s)));
      }
    }
  }
  return fx;
}

RunConfig default_config(const std::string& generator) {
  RunConfig c;
  c.generator = parse_generator_spec(generator);
  const char* env = std::getenv("HQC_MEMORY_BUDGET");
  if (env && *env) c.memory_bytes = parse_byte_size(env);
  return c;
}

std::optional<std::uint64_t> pow4(std::size_t c) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < c; ++i) {
    if (v > (std::uint64_t{1} << 61)) return std::nullopt;
    v *= 4;
  }
  return v;
}

// ---- criterion bodies -------------------------------------------------------

Outcome noise_golden() {
  Outcome o;
  const std::tuple<int, const char*> rows[] = {{10, "0.59"}, {20, "1.19"}, {30, "1.79"}};
  for (const auto& [n, want] : rows) {
    const auto c = make_ghz(n);
    const auto got = format_2dp(noise_score(c.count_single_qubit(), c.count_multi_qubit(),
                                            static_cast<std::size_t>(c.num_qubits())));
    o.detail += "ghz" + std::to_string(n) + "=" + got + " ";
    if (got != want) o.pass = false;
  }
  return o;
}

Outcome memory_golden() {
  Outcome o;
  const std::tuple<std::size_t, std::uint64_t> rows[] = {{10, 16384}, {20, 16777216}, {30, 17179869184ULL}};
  for (const auto& [n, want] : rows) {
    const auto got = memory_requirement(n);
    o.detail += std::to_string(n) + "->" + std::to_string(got) + " ";
    if (got != want) o.pass = false;
  }
  return o;
}

Outcome hybrid_flags() {
  Outcome o;
  for (const char* kind : {"ghz", "bv", "qft"}) {
    for (int n : {10, 20, 30}) {
      const auto cfg = default_config(std::string(kind) + ":" + std::to_string(n));
      const auto input = load_input(cfg);
      const auto out = run_pipeline(input, cfg, false);
      const auto& r = out.report;
      bool ok = out.plan.budget.memory_bytes >= (std::uint64_t{1} << 30);
      if (std::string(kind) == "qft") {
        ok = ok && r.saved_percent == 0.0 && r.qubit_max == out.plan.candidate.subcircuits.max_width();
      } else {
        ok = ok && r.saved_percent == 100.0 && r.qubit_max == 0;
      }
      if (!ok) {
        o.pass = false;
        o.detail += std::string(kind) + std::to_string(n) + " saved=" + std::to_string(r.saved_percent) +
                    " qubit_max=" + std::to_string(r.qubit_max) + "; ";
      }
    }
  }
  const auto cfg = default_config("random:20:depth=2:seed=2");
  const auto out = run_pipeline(load_input(cfg), cfg, false);
  const double saved = out.report.saved_percent;
  if (!(saved > 0.0 && saved < 100.0)) o.pass = false;
  char buf[64];
  std::snprintf(buf, sizeof buf, "random20 saved=%.2f%%", saved);
  o.detail += buf;
  return o;
}

Outcome exact_reconstruction() {
  Outcome o;
  struct Case {
    std::string name;
    SubcircuitSet subs;
  };
  std::vector<Case> cases;
  auto split = [](const Circuit& c, std::vector<int> parts) { return extract_subcircuits(schedule_asap(c), parts); };
  cases.push_back({"bell", split(bell(), {0, 1})});
  cases.push_back({"ghz3", split(make_ghz(3), {0, 1, 1})});
  cases.push_back({"ghz4", split(make_ghz(4), {0, 0, 1, 1})});
  cases.push_back({"ghz6", split(make_ghz(6), {0, 0, 1, 1, 2, 2})});

  int randoms = 0;
  for (std::uint64_t seed = 1; randoms < 20 && seed < 500; ++seed) {
    const int n = 4 + static_cast<int>(seed % 5);
    const int depth = 3 + static_cast<int>(seed % 4);
    const auto cand = sweep_k(make_random(n, depth, seed));
    if (cand.cut_points < 1 || cand.cut_points > 2) continue;
    cases.push_back({"random" + std::to_string(n) + "d" + std::to_string(depth) + "s" + std::to_string(seed),
                     cand.subcircuits});
    ++randoms;
  }
  if (randoms < 20) {
    o.pass = false;
    o.detail += "only " + std::to_string(randoms) + " random cases; ";
  }

  double worst = 0.0;
  for (auto& cs : cases) {
    const auto ref = support::oracle_distribution(cs.subs.source);
    const double d = total_variation(support::reconstruct_exact(cs.subs), ref);
    worst = std::max(worst, d);
    if (!(d < kExactTvd)) {
      o.pass = false;
      o.detail += cs.name + " tvd=" + std::to_string(d) + "; ";
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu circuits, worst TVD %.2e", cases.size(), worst);
  o.detail += buf;
  return o;
}

Outcome sampled_reconstruction() {
  Outcome o;
  const std::tuple<std::string, Circuit, std::vector<int>> fixtures[] = {
      {"bell", bell(), {0, 1}},
      {"ghz4", make_ghz(4), {0, 0, 1, 1}},
  };
  for (const auto& [name, circuit, parts] : fixtures) {
    auto subs = extract_subcircuits(schedule_asap(circuit), parts);
    if (subs.num_cuts() != 1) throw std::logic_error(name + " fixture must have one cut");
    const auto ref = support::oracle_distribution(subs.source);
    int good = 0;
    double worst = 0.0;
    for (int seed = 1; seed <= kSampledSeeds; ++seed) {
      auto e = support::execute_all(subs, ExecMode::Quantum, static_cast<std::uint64_t>(seed), 1000);
      const auto d = total_variation(reconstruct(subs, e.variants, e.results, ReconstructionPath::Sampled), ref);
      worst = std::max(worst, d);
      if (d < kSampledTvd) ++good;
    }
    const double rate = static_cast<double>(good) / kSampledSeeds;
    if (rate < kSampledPassRate) o.pass = false;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %d/%d (worst %.3f) ", name.c_str(), good, kSampledSeeds, worst);
    o.detail += buf;
  }
  return o;
}

Outcome partitioner_optimality() {
  Outcome o;
  int checked = 0;
  int mismatches = 0;
  for (const auto& c0 : small_fixtures()) {
    const auto c = schedule_asap(c0);
    const auto sweep = sweep_k(c);
    const auto brute = oracle::min_cut_points(c);
    const bool ok = brute.min_cuts ? (sweep.valid && sweep.cut_points == *brute.min_cuts) : !sweep.valid;
    ++checked;
    if (!ok) {
      ++mismatches;
      o.pass = false;
      o.detail += c0.name() + " sweep=" + std::to_string(sweep.cut_points) +
                  " brute=" + (brute.min_cuts ? std::to_string(*brute.min_cuts) : "none") + "; ";
    }
  }
  o.detail += std::to_string(checked - mismatches) + "/" + std::to_string(checked) + " fixtures optimal";
  return o;
}

Outcome overhead_law() {
  Outcome o;
  int runs = 0;
  auto check = [&](const RunReport& r, const std::string& name) {
    ++runs;
    if (r.sampling_overhead != pow4(r.cut_points)) {
      o.pass = false;
      o.detail += name + " C=" + std::to_string(r.cut_points) + "; ";
    }
  };
  for (const auto& c : small_fixtures()) {
    RunConfig cfg;
    cfg.memory_bytes = std::uint64_t{1} << 30;
    check(run_pipeline(c, cfg, false).report, c.name());
  }
  for (const char* g : {"ghz:10", "ghz:20", "ghz:30", "bv:10", "bv:20", "bv:30", "qft:10", "qft:20", "qft:30",
                        "random:20:depth=2:seed=2", "random:30:depth=20:seed=1"}) {
    const auto cfg = default_config(g);
    check(run_pipeline(load_input(cfg), cfg, false).report, g);
  }
  o.detail += std::to_string(runs) + " runs";
  return o;
}

Circuit fuzz_circuit(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nq(4, 16);
  const int n = nq(rng);
  std::uniform_int_distribution<int> ng(1, 6 * n);
  std::uniform_int_distribution<int> pick_q(0, n - 1);
  std::uniform_int_distribution<int> pick_k(0, 15);
  std::uniform_real_distribution<double> angle(-3.2, 3.2);
  const GateKind kinds[] = {GateKind::H,  GateKind::X,  GateKind::Y,  GateKind::Z,  GateKind::S,   GateKind::Sdg,
                            GateKind::T,  GateKind::Tdg, GateKind::RZ, GateKind::RX, GateKind::RY,  GateKind::CX,
                            GateKind::CZ, GateKind::CP,  GateKind::Swap, GateKind::CCX};
  Circuit c(n, "fuzz");
  const int count = ng(rng);
  for (int i = 0; i < count; ++i) {
    const GateKind k = kinds[pick_k(rng)];
    std::vector<int> qs;
    while (qs.size() < gate_arity(k)) {
      const int q = pick_q(rng);
      if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
    }
    std::vector<double> ps;
    for (std::size_t p = 0; p < gate_param_count(k); ++p) ps.push_back(angle(rng));
    c.add(k, qs, ps);
  }
  return c;
}

using GateKey = std::tuple<GateKind, std::vector<int>, std::vector<double>>;

std::map<GateKey, int> source_multiset(const Circuit& c) {
  std::map<GateKey, int> m;
  for (const auto& g : c.gates()) ++m[{g.kind, g.qubits, g.params}];
  return m;
}

std::map<GateKey, int> extracted_multiset(const SubcircuitSet& subs) {
  std::map<GateKey, int> m;
  for (const auto& s : subs.subcircuits) {
    for (const auto& g : s.circuit.gates()) {
      std::vector<int> qs;
      for (int w : g.qubits) qs.push_back(s.wires[static_cast<std::size_t>(w)].qubit);
      ++m[{g.kind, qs, g.params}];
    }
  }
  return m;
}

Outcome structural_invariants() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  int violations = 0;
  int partitioned = 0;
  for (int i = 0; partitioned < kFuzzCircuits; ++i) {
    const auto c = schedule_asap(fuzz_circuit(rng));
    const auto hg = build_hypergraph(c);
    const auto g = clique_expand(hg);
    const int k_max = std::min<int>(std::min(c.num_qubits() / 2, 8), static_cast<int>(hg.num_nodes()));
    if (k_max < 2) continue;
    std::uniform_int_distribution<int> pick_k(2, k_max);
    const int k = pick_k(rng);
    const auto raw = partition_k(g, k, rng());
    const auto repaired = repair_gate_colocation(hg, raw);
    ++partitioned;
    std::string what;
    if (count_gate_violations(hg, repaired) != 0) what += "gate cut after repair; ";
    const auto subs = extract_subcircuits(c, hg, repaired);
    const auto want = source_multiset(c);
    if (extracted_multiset(subs) != want) what += "extraction lost gates; ";
    if (subs.num_cuts() != count_cut_points(hg, repaired)) what += "cut count mismatch; ";
    for (const auto& cap : {std::optional<std::size_t>{}, std::optional<std::size_t>{max_part_size(hg.num_nodes(), k)}}) {
      const auto moved = reallocate_shared_qubits(subs, cap);
      if (extracted_multiset(moved) != want) what += "reallocation lost gates; ";
      if (moved.num_cuts() > subs.num_cuts()) what += "reallocation raised C; ";
      const auto a = assignment_from_subcircuits(moved, hg);
      if (count_gate_violations(hg, a) != 0) what += "reallocation cut a gate; ";
    }
    if (!what.empty()) {
      ++violations;
      o.pass = false;
      if (violations <= 5) o.detail += "circuit " + std::to_string(i) + ": " + what;
    }
  }
  o.detail += std::to_string(partitioned) + " fuzzed circuits, " + std::to_string(violations) + " violating";
  return o;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_timing(const std::string& text) {
  auto j = nlohmann::ordered_json::parse(text);
  j.erase("timing");
  return j.dump(2);
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  const auto root = fs::temp_directory_path() / "hqc_acceptance_det";
  fs::remove_all(root);
  const std::string configs[] = {
      "-g ghz:10 --seed 1 --memory 1G",
      "-g random:8:depth=6:seed=3 --seed 7 --memory 1G --mode quantum --noise",
      "-g qft:6 --seed 2 --memory 1G -k 2",
  };
  int idx = 0;
  for (const auto& args : configs) {
    std::string reports[2];
    for (int run = 0; run < 2; ++run) {
      const auto dir = root / (std::to_string(idx) + "_" + std::to_string(run));
      const std::string threads = run == 0 ? " -j 1" : " -j 4";
      const std::string cmd = "\"" + cli + "\" run " + args + threads + " -o \"" + dir.string() + "\" > /dev/null";
      if (std::system(cmd.c_str()) != 0) throw std::runtime_error("cli failed: " + cmd);
      reports[run] = strip_timing(read_file(dir / "report.json"));
    }
    if (reports[0] != reports[1]) {
      o.pass = false;
      o.detail += "differs for '" + args + "'; ";
    }
    ++idx;
  }
  o.detail += std::to_string(idx) + " configurations run twice";
  fs::remove_all(root);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: hqc_acceptance <hqc-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];

  criterion(1, "noise score matches GHZ table rows", 1, noise_golden);
  criterion(2, "memory requirement matches cost table totals", 1, memory_golden);
  criterion(3, "hybrid flags for GHZ/BV/QFT and a mixed random circuit", 30, hybrid_flags);
  criterion(4, "exact-path reconstruction equals the statevector oracle", 60, exact_reconstruction);
  criterion(5, "sampled-path reconstruction within TVD 0.05", 120, sampled_reconstruction);
  criterion(6, "sweep reaches the brute-force minimum cut count", 120, partitioner_optimality);
  criterion(7, "sampling overhead is 4^C", 0, overhead_law);
  criterion(8, "structural invariants over fuzzed circuits", 300, structural_invariants);
  criterion(9, "identical config and seed give identical report.json", 0, [&] { return determinism(cli); });

  return failures == 0 ? 0 : 1;
}
