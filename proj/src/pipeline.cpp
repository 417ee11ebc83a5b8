#include "hqc/pipeline.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include "hqc/hypergraph.hpp"
#include "hqc/partition.hpp"
#include "hqc/qasm.hpp"

namespace hqc {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T v{};
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) {
    throw StageError("config", "invalid " + std::string(what) + ": '" + std::string(text) + "'", true);
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string_view mode_name(ExecMode m) { return m == ExecMode::Classical ? "classical" : "quantum"; }

std::string_view override_name(ModeOverride m) {
  switch (m) {
    case ModeOverride::Auto: return "auto";
    case ModeOverride::Classical: return "classical";
    case ModeOverride::Quantum: return "quantum";
  }
  return "auto";
}

ModeOverride override_from_name(const std::string& s) {
  if (s == "auto") return ModeOverride::Auto;
  if (s == "classical") return ModeOverride::Classical;
  if (s == "quantum") return ModeOverride::Quantum;
  throw StageError("config", "unknown mode '" + s + "'", true);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StageError("parse", "cannot open " + path.string(), true);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StageError("report", "cannot write " + path.string(), true);
  out << text;
}

ordered_json overhead_json(const std::optional<std::uint64_t>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

GeneratorSpec parse_generator_spec(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() < 2) throw StageError("config", "generator spec must look like kind:n", true);
  GeneratorSpec spec;
  auto kind = benchmark_from_name(parts[0]);
  if (!kind) throw StageError("config", "unknown benchmark '" + parts[0] + "'", true);
  spec.kind = *kind;
  spec.n = parse_number<int>(parts[1], "qubit count");
  for (std::size_t i = 2; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) throw StageError("config", "expected key=value, got '" + parts[i] + "'", true);
    const std::string key = parts[i].substr(0, eq);
    const std::string val = parts[i].substr(eq + 1);
    if (key == "secret") {
      spec.options.secret = val;
    } else if (key == "depth") {
      spec.options.depth = parse_number<int>(val, "depth");
    } else if (key == "seed") {
      spec.options.seed = parse_number<std::uint64_t>(val, "seed");
    } else {
      throw StageError("config", "unknown generator option '" + key + "'", true);
    }
  }
  return spec;
}

std::string to_string(const GeneratorSpec& spec) {
  std::string s = std::string(benchmark_name(spec.kind)) + ":" + std::to_string(spec.n);
  if (spec.options.secret) s += ":secret=" + *spec.options.secret;
  if (spec.options.depth) s += ":depth=" + std::to_string(*spec.options.depth);
  if (spec.options.seed) s += ":seed=" + std::to_string(*spec.options.seed);
  return s;
}

std::uint64_t parse_byte_size(const std::string& text) {
  if (text.empty()) throw StageError("config", "empty memory size", true);
  std::string digits = text;
  std::uint64_t mult = 1;
  switch (text.back()) {
    case 'K': case 'k': mult = std::uint64_t{1} << 10; digits.pop_back(); break;
    case 'M': case 'm': mult = std::uint64_t{1} << 20; digits.pop_back(); break;
    case 'G': case 'g': mult = std::uint64_t{1} << 30; digits.pop_back(); break;
    case 'T': case 't': mult = std::uint64_t{1} << 40; digits.pop_back(); break;
    default: break;
  }
  const auto v = parse_number<std::uint64_t>(digits, "memory size");
  if (v != 0 && mult > std::numeric_limits<std::uint64_t>::max() / v) {
    throw StageError("config", "memory size overflows", true);
  }
  return v * mult;
}

std::uint64_t detect_memory_bytes() {
  const long pages = sysconf(_SC_PHYS_PAGES);
  const long page = sysconf(_SC_PAGE_SIZE);
  if (pages <= 0 || page <= 0) return 0;
  return static_cast<std::uint64_t>(pages) * static_cast<std::uint64_t>(page);
}

ResourceBudget resolve_budget(const RunConfig& config) {
  ResourceBudget b;
  std::uint64_t mem = config.memory_bytes ? *config.memory_bytes : detect_memory_bytes();
  if (mem == 0) mem = std::uint64_t{1} << 30;
  b.memory_bytes = mem;
  b.max_multiqubit_gates =
      config.multi_gate_threshold ? *config.multi_gate_threshold : max_qubits_for(mem, b.bytes_per_amplitude);
  b.shots = config.shots;
  b.simulator_width_cap = config.simulator_width_cap;
  return b;
}

Circuit load_input(const RunConfig& config) {
  Circuit c;
  try {
    if (config.qasm) {
      c = parse_qasm(*config.qasm);
    } else if (config.input_file) {
      c = parse_qasm(read_file(*config.input_file));
      if (c.name().empty()) c.set_name(std::filesystem::path(*config.input_file).stem().string());
    } else if (config.generator) {
      c = generate(config.generator->kind, config.generator->n, config.generator->options);
    } else {
      throw StageError("parse", "no input circuit given", true);
    }
  } catch (const QasmError& e) {
    throw StageError("parse", e.what(), true);
  } catch (const CircuitError& e) {
    throw StageError("parse", e.what(), true);
  } catch (const std::invalid_argument& e) {
    throw StageError("parse", e.what(), true);
  }
  if (config.name) c.set_name(*config.name);
  return c;
}

Plan make_plan(const Circuit& input, const RunConfig& config) {
  if (config.k_cap < 1) throw StageError("config", "k_cap must be at least 1", true);
  if (config.shots == 0) throw StageError("config", "shots must be positive", true);

  Plan plan;
  plan.circuit = schedule_asap(input);
  plan.budget = resolve_budget(config);

  SweepOptions opts;
  opts.k_cap = config.k_cap;
  opts.seed = config.seed;
  opts.workers = config.workers;
  try {
    if (config.forced_k) {
      const int k = *config.forced_k;
      if (k < 1) throw StageError("partition", "forced K must be at least 1", true);
      if (k == 1) {
        plan.candidate = single_part_candidate(plan.circuit);
      } else {
        const auto hg = build_hypergraph(plan.circuit);
        const auto g = clique_expand(hg);
        if (static_cast<std::size_t>(k) > hg.nodes().size()) {
          throw StageError("partition", "forced K exceeds the number of hypergraph nodes", true);
        }
        plan.candidate = evaluate_k(plan.circuit, hg, g, k, opts);
      }
    } else {
      plan.candidate = sweep_k(plan.circuit, opts);
    }
  } catch (const PartitionError& e) {
    throw StageError("partition", e.what(), false);
  } catch (const CutError& e) {
    throw StageError("partition", e.what(), false);
  }

  for (auto& sub : plan.candidate.subcircuits.subcircuits) {
    Decision d;
    switch (config.mode) {
      case ModeOverride::Auto: d = decide(sub, plan.budget); break;
      case ModeOverride::Classical: d = {ExecMode::Classical, DecisionReason::Forced}; break;
      case ModeOverride::Quantum: d = {ExecMode::Quantum, DecisionReason::Forced}; break;
    }
    sub.mode = d.mode;
    plan.decisions.push_back(d);
  }
  return plan;
}

RunOutcome run_pipeline(const Circuit& input, const RunConfig& config, bool execute) {
  const auto t_start = Clock::now();
  RunOutcome out;
  out.plan = make_plan(input, config);
  out.timings.partition_s = seconds_since(t_start);

  const auto& subs = out.plan.candidate.subcircuits;
  out.report = build_report({out.plan.circuit, subs, out.plan.decisions, out.plan.candidate.k});

  if (!execute) {
    out.skipped_reason = "not requested";
  } else if (subs.num_cuts() > config.max_exec_cuts) {
    out.skipped_reason = std::to_string(subs.num_cuts()) + " cut points exceed the execution limit of " +
                         std::to_string(config.max_exec_cuts);
  } else if (input.num_qubits() > 63) {
    out.skipped_reason = "more than 63 output qubits";
  } else {
    for (std::size_t i = 0; i < subs.subcircuits.size(); ++i) {
      const auto& s = subs.subcircuits[i];
      if (*s.mode == ExecMode::Quantum && static_cast<int>(s.width()) > out.plan.budget.simulator_width_cap) {
        out.skipped_reason = "subcircuit " + std::to_string(i) + " exceeds the simulator width cap";
        break;
      }
      if (*s.mode == ExecMode::Classical &&
          memory_requirement(s.width(), out.plan.budget.bytes_per_amplitude) > out.plan.budget.memory_bytes) {
        out.skipped_reason = "subcircuit " + std::to_string(i) + " exceeds the memory budget";
        break;
      }
    }
  }

  if (out.skipped_reason.empty()) {
    const auto t_exec = Clock::now();
    std::vector<VariantSet> variants;
    variants.reserve(subs.subcircuits.size());
    for (const auto& s : subs.subcircuits) variants.push_back(enumerate_variants(s));
    ExecutionOptions eo;
    eo.noise.enabled = config.noise;
    eo.seed = config.seed;
    eo.workers = config.workers;
    ExecutionResults results;
    try {
      results = execute_variants(subs, variants, out.plan.budget, eo);
    } catch (const ExecutionError& e) {
      throw StageError("execute", e.what(), false);
    }
    out.timings.execution_s = seconds_since(t_exec);

    const auto t_rec = Clock::now();
    const bool all_classical = std::all_of(subs.subcircuits.begin(), subs.subcircuits.end(),
                                           [](const Subcircuit& s) { return *s.mode == ExecMode::Classical; });
    out.path = all_classical ? ReconstructionPath::Exact : ReconstructionPath::Sampled;
    try {
      out.distribution = reconstruct(subs, variants, results, *out.path);
    } catch (const ReconstructionError& e) {
      throw StageError("reconstruct", e.what(), false);
    }
    out.timings.reconstruction_s = seconds_since(t_rec);
  }
  out.timings.total_s = seconds_since(t_start);
  return out;
}

ordered_json config_to_json(const RunConfig& config, const Circuit& input) {
  ordered_json j;
  ordered_json in;
  if (config.input_file) in["file"] = *config.input_file;
  if (config.generator) in["generator"] = to_string(*config.generator);
  in["name"] = input.name();
  j["input"] = in;
  j["k_cap"] = config.k_cap;
  j["forced_k"] = config.forced_k ? ordered_json(*config.forced_k) : ordered_json(nullptr);
  j["seed"] = config.seed;
  j["shots"] = config.shots;
  j["memory_bytes"] = config.memory_bytes ? ordered_json(*config.memory_bytes) : ordered_json(nullptr);
  j["multi_gate_threshold"] =
      config.multi_gate_threshold ? ordered_json(*config.multi_gate_threshold) : ordered_json("auto");
  j["noise"] = config.noise;
  j["mode"] = override_name(config.mode);
  j["simulator_width_cap"] = config.simulator_width_cap;
  j["max_exec_cuts"] = config.max_exec_cuts;
  return j;
}

RunConfig config_from_report(const nlohmann::json& report) {
  RunConfig c;
  try {
    const auto& j = report.at("config");
    const auto& in = j.at("input");
    if (in.contains("file")) c.input_file = in.at("file").get<std::string>();
    if (in.contains("generator")) c.generator = parse_generator_spec(in.at("generator").get<std::string>());
    c.name = in.at("name").get<std::string>();
    c.qasm = report.at("circuit").at("qasm").get<std::string>();
    c.k_cap = j.at("k_cap").get<int>();
    if (!j.at("forced_k").is_null()) c.forced_k = j.at("forced_k").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.shots = j.at("shots").get<std::size_t>();
    if (!j.at("memory_bytes").is_null()) c.memory_bytes = j.at("memory_bytes").get<std::uint64_t>();
    const auto& mg = j.at("multi_gate_threshold");
    if (!mg.is_string()) c.multi_gate_threshold = mg.get<std::size_t>();
    c.noise = j.at("noise").get<bool>();
    c.mode = override_from_name(j.at("mode").get<std::string>());
    c.simulator_width_cap = j.at("simulator_width_cap").get<int>();
    c.max_exec_cuts = j.at("max_exec_cuts").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw StageError("config", std::string("malformed report: ") + e.what(), true);
  }
  return c;
}

ordered_json candidate_json(const PartitionCandidate& c) {
  ordered_json j;
  j["K"] = c.k;
  j["C"] = c.cut_points;
  j["sampling_overhead"] = overhead_json(sampling_overhead(c.cut_points));
  j["cut_points_before_reallocation"] = c.cut_points_before_reallocation;
  j["gate_violations_before_repair"] = c.gate_violations;
  j["edge_cut"] = c.edge_cut;
  j["balanced"] = c.balanced;
  j["valid"] = c.valid;
  ordered_json parts = ordered_json::array();
  for (const auto& s : c.subcircuits.subcircuits) {
    ordered_json p;
    p["id"] = s.id;
    p["width"] = s.width();
    p["qubits"] = s.qubit_map();
    p["gates"] = s.gate_indices;
    p["in_cuts"] = s.in_cuts;
    p["out_cuts"] = s.out_cuts;
    parts.push_back(p);
  }
  j["parts"] = parts;
  ordered_json cuts = ordered_json::array();
  for (const auto& cp : c.subcircuits.cuts) {
    cuts.push_back({{"id", cp.id},
                    {"qubit", cp.qubit},
                    {"from", cp.upstream.subcircuit},
                    {"to", cp.downstream.subcircuit},
                    {"time", cp.upstream.time}});
  }
  j["cuts"] = cuts;
  return j;
}

ordered_json distribution_json(const FullDistribution& d) {
  ordered_json j;
  j["num_qubits"] = d.num_qubits;
  j["bit_order"] = "q0 first";
  ordered_json probs = ordered_json::object();
  for (const auto& [k, p] : d.probs) probs[bitstring_to_string(k, d.num_qubits)] = p;
  j["probabilities"] = probs;
  return j;
}

ordered_json report_json(const RunOutcome& outcome, const RunConfig& config, const Circuit& input) {
  const auto& plan = outcome.plan;
  const auto& r = outcome.report;
  ordered_json j;
  j["config"] = config_to_json(config, input);

  ordered_json circ;
  circ["name"] = input.name();
  circ["num_qubits"] = input.num_qubits();
  circ["gates"] = input.size();
  circ["depth"] = plan.circuit.depth();
  circ["single_qubit_gates"] = input.count_single_qubit();
  circ["multi_qubit_gates"] = input.count_multi_qubit();
  circ["non_clifford"] = input.has_non_clifford();
  circ["qasm"] = emit_qasm(input);
  j["circuit"] = circ;

  j["budget"] = {{"memory_bytes", plan.budget.memory_bytes},
                 {"max_multiqubit_gates", plan.budget.max_multiqubit_gates},
                 {"shots", plan.budget.shots},
                 {"bytes_per_amplitude", plan.budget.bytes_per_amplitude},
                 {"simulator_width_cap", plan.budget.simulator_width_cap}};

  j["partition"] = candidate_json(plan.candidate);

  ordered_json subs = ordered_json::array();
  for (std::size_t i = 0; i < r.subcircuits.size(); ++i) {
    const auto& sr = r.subcircuits[i];
    ordered_json s;
    s["id"] = sr.id;
    s["mode"] = mode_name(sr.mode);
    s["reason"] = reason_name(sr.reason);
    s["width"] = sr.width;
    s["qubits"] = sr.qubits;
    s["single_qubit_gates"] = sr.single_gates;
    s["multi_qubit_gates"] = sr.multi_gates;
    s["noise"] = sr.noise;
    s["memory_bytes"] = sr.memory_bytes;
    s["physical_variants"] = sr.physical_variants;
    s["qasm"] = emit_qasm(plan.candidate.subcircuits.subcircuits[i].circuit);
    subs.push_back(s);
  }
  j["subcircuits"] = subs;

  ordered_json m;
  m["circuit"] = r.circuit;
  m["num_qubits"] = r.num_qubits;
  m["K"] = r.k;
  m["C"] = r.cut_points;
  m["sampling_overhead"] = overhead_json(r.sampling_overhead);
  m["original_noise"] = r.original_noise;
  m["quantum_noise"] = r.quantum_noise;
  m["classical_noise"] = r.classical_noise;
  m["saved_percent"] = r.saved_percent;
  m["qubit_total"] = r.qubit_total;
  m["qubit_max"] = r.qubit_max;
  m["classical_total"] = r.classical_total;
  m["classical_max"] = r.classical_max;
  j["metrics"] = m;

  ordered_json ex;
  ex["executed"] = outcome.distribution.has_value();
  if (outcome.distribution) {
    ex["path"] = *outcome.path == ReconstructionPath::Exact ? "exact" : "sampled";
    ex["distribution"] = distribution_json(*outcome.distribution);
  } else {
    ex["skipped_reason"] = outcome.skipped_reason;
  }
  j["execution"] = ex;

  j["timing"] = {{"partition_s", outcome.timings.partition_s},
                 {"execution_s", outcome.timings.execution_s},
                 {"reconstruction_s", outcome.timings.reconstruction_s},
                 {"total_s", outcome.timings.total_s}};
  return j;
}

RunReport report_from_json(const nlohmann::json& report) {
  RunReport r;
  try {
    const auto& m = report.at("metrics");
    r.circuit = m.at("circuit").get<std::string>();
    r.num_qubits = m.at("num_qubits").get<int>();
    r.k = m.at("K").get<int>();
    r.cut_points = m.at("C").get<std::size_t>();
    if (!m.at("sampling_overhead").is_null()) r.sampling_overhead = m.at("sampling_overhead").get<std::uint64_t>();
    r.original_noise = m.at("original_noise").get<double>();
    r.quantum_noise = m.at("quantum_noise").get<double>();
    r.classical_noise = m.at("classical_noise").get<double>();
    r.saved_percent = m.at("saved_percent").get<double>();
    r.qubit_total = m.at("qubit_total").get<std::size_t>();
    r.qubit_max = m.at("qubit_max").get<std::size_t>();
    r.classical_total = m.at("classical_total").get<std::uint64_t>();
    r.classical_max = m.at("classical_max").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw StageError("report", std::string("malformed report: ") + e.what(), true);
  }
  return r;
}

std::string tables_csv_header() {
  return "circuit,qubits,k,cut_points,sampling_overhead,original_noise,quantum_noise,classical_noise,"
         "saved_percent,qubit_total,qubit_max,classical_total,classical_max\n";
}

std::string tables_csv_row(const RunReport& r) {
  std::ostringstream os;
  os << r.circuit << ',' << r.num_qubits << ',' << r.k << ',' << r.cut_points << ','
     << (r.sampling_overhead ? std::to_string(*r.sampling_overhead) : std::string("inf")) << ','
     << format_2dp(r.original_noise) << ',' << format_2dp(r.quantum_noise) << ',' << format_2dp(r.classical_noise)
     << ',' << format_2dp(r.saved_percent) << ',' << r.qubit_total << ',' << r.qubit_max << ','
     << r.classical_total << ',' << r.classical_max << '\n';
  return os.str();
}

std::string distribution_csv(const FullDistribution& d) {
  std::ostringstream os;
  os.precision(17);
  os << "bitstring,probability\n";
  for (const auto& [k, p] : d.probs) os << bitstring_to_string(k, d.num_qubits) << ',' << p << '\n';
  return os.str();
}

void write_artifacts(const RunOutcome& outcome, const RunConfig& config, const Circuit& input) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.out_dir / "plotdata", ec);
  if (ec) throw StageError("report", "cannot create " + config.out_dir.string() + ": " + ec.message(), true);

  write_file(config.out_dir / "report.json", report_json(outcome, config, input).dump(2) + "\n");
  write_file(config.out_dir / "tables.csv", tables_csv_header() + tables_csv_row(outcome.report));
  if (outcome.distribution) {
    write_file(config.out_dir / "distribution.json", distribution_json(*outcome.distribution).dump(2) + "\n");
    write_file(config.out_dir / "distribution.csv", distribution_csv(*outcome.distribution));
  }

  const auto& r = outcome.report;
  std::ostringstream noise;
  noise << "circuit,qubits,original,quantum,classical\n"
        << r.circuit << ',' << r.num_qubits << ',' << format_2dp(r.original_noise) << ','
        << format_2dp(r.quantum_noise) << ',' << format_2dp(r.classical_noise) << '\n';
  write_file(config.out_dir / "plotdata" / "noise.csv", noise.str());

  std::ostringstream cost;
  cost << "circuit,qubits,qubit_total,qubit_max,classical_total,classical_max\n"
       << r.circuit << ',' << r.num_qubits << ',' << r.qubit_total << ',' << r.qubit_max << ','
       << r.classical_total << ',' << r.classical_max << '\n';
  write_file(config.out_dir / "plotdata" / "cost.csv", cost.str());

  std::ostringstream subs;
  subs << "id,mode,reason,width,single_gates,multi_gates,noise,memory_bytes\n";
  for (const auto& s : r.subcircuits) {
    subs << s.id << ',' << mode_name(s.mode) << ',' << reason_name(s.reason) << ',' << s.width << ','
         << s.single_gates << ',' << s.multi_gates << ',' << format_2dp(s.noise) << ',' << s.memory_bytes << '\n';
  }
  write_file(config.out_dir / "plotdata" / "subcircuits.csv", subs.str());
}

}  // namespace hqc
