// hqc: partition, execute and report hybrid quantum/classical runs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hqc/pipeline.hpp"
#include "hqc/qasm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitInternal = 2;

int fail(const std::string& stage, const std::string& message, bool user) {
  nlohmann::ordered_json j;
  j["error"] = {{"stage", stage}, {"message", message}, {"kind", user ? "user" : "internal"}};
  std::cerr << j.dump() << '\n';
  return user ? kExitUser : kExitInternal;
}

struct InputFlags {
  std::string file;
  std::string generator;
};

void add_input_flags(CLI::App* cmd, InputFlags& in) {
  auto* f = cmd->add_option("-i,--input", in.file, "OpenQASM 2.0 input file");
  auto* g = cmd->add_option("-g,--generate", in.generator, "generator spec, e.g. ghz:10 or random:10:depth=20:seed=1");
  f->excludes(g);
}

struct ConfigFlags {
  int k_cap = 8;
  int forced_k = 0;
  std::uint64_t seed = 0;
  std::size_t shots = 1000;
  std::string memory;
  std::string threshold = "auto";
  bool noise = false;
  std::string mode = "auto";
  int width_cap = 25;
  std::size_t max_exec_cuts = 6;
  unsigned workers = 0;
};

void add_partition_flags(CLI::App* cmd, ConfigFlags& c) {
  cmd->add_option("--k-cap", c.k_cap, "largest K tried by the sweep")->check(CLI::PositiveNumber);
  cmd->add_option("-k,--k", c.forced_k, "partition into exactly K parts")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("-j,--threads", c.workers, "worker threads (0 = hardware)");
}

void add_run_flags(CLI::App* cmd, ConfigFlags& c) {
  add_partition_flags(cmd, c);
  cmd->add_option("--shots", c.shots, "shots per quantum variant")->check(CLI::PositiveNumber);
  cmd->add_option("--memory", c.memory, "memory budget, e.g. 8G (default: $HQC_MEMORY_BUDGET or physical memory)");
  cmd->add_option("--multi-gate-threshold", c.threshold, "max multi-qubit gates for classical execution, or auto");
  cmd->add_flag("--noise", c.noise, "depolarizing noise on the quantum simulator");
  cmd->add_option("--mode", c.mode, "auto, classical or quantum")
      ->check(CLI::IsMember({"auto", "classical", "quantum"}));
  cmd->add_option("--width-cap", c.width_cap, "simulator width cap")->check(CLI::PositiveNumber);
  cmd->add_option("--max-exec-cuts", c.max_exec_cuts, "skip execution above this many cut points");
}

hqc::RunConfig make_config(const InputFlags& in, const ConfigFlags& f) {
  hqc::RunConfig c;
  if (!in.file.empty()) c.input_file = in.file;
  if (!in.generator.empty()) c.generator = hqc::parse_generator_spec(in.generator);
  if (!c.input_file && !c.generator) throw hqc::StageError("config", "one of --input or --generate is required", true);
  c.k_cap = f.k_cap;
  if (f.forced_k > 0) c.forced_k = f.forced_k;
  c.seed = f.seed;
  c.shots = f.shots;
  if (!f.memory.empty()) {
    c.memory_bytes = hqc::parse_byte_size(f.memory);
  } else if (const char* env = std::getenv("HQC_MEMORY_BUDGET"); env && *env) {
    c.memory_bytes = hqc::parse_byte_size(env);
  } else if (const auto detected = hqc::detect_memory_bytes(); detected > 0) {
    c.memory_bytes = detected;
  }
  if (f.threshold != "auto") {
    std::size_t v = 0;
    std::istringstream ss(f.threshold);
    if (!(ss >> v) || !ss.eof()) throw hqc::StageError("config", "bad --multi-gate-threshold '" + f.threshold + "'", true);
    c.multi_gate_threshold = v;
  }
  c.noise = f.noise;
  c.mode = f.mode == "classical" ? hqc::ModeOverride::Classical
           : f.mode == "quantum" ? hqc::ModeOverride::Quantum
                                 : hqc::ModeOverride::Auto;
  c.simulator_width_cap = f.width_cap;
  c.max_exec_cuts = f.max_exec_cuts;
  c.workers = f.workers;
  return c;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hqc::StageError("report", "cannot open " + path, true);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw hqc::StageError("report", path + ": " + e.what(), true);
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hqc::StageError("output", "cannot write " + path, true);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid quantum/classical circuit partitioning and execution"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a benchmark circuit as OpenQASM");
  std::string gen_kind;
  int gen_n = 0;
  std::string gen_secret;
  int gen_depth = -1;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("kind", gen_kind, "bv, ghz, qft or random")->required();
  gen->add_option("n", gen_n, "number of qubits")->required();
  auto* secret_opt = gen->add_option("--secret", gen_secret, "BV secret bit string");
  auto* depth_opt = gen->add_option("--depth", gen_depth, "random circuit depth");
  auto* seed_opt = gen->add_option("--seed", gen_seed, "random circuit seed");
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");

  // partition
  auto* part = app.add_subcommand("partition", "run the K sweep and print the chosen partition");
  InputFlags part_in;
  ConfigFlags part_cfg;
  std::string export_dir;
  add_input_flags(part, part_in);
  add_partition_flags(part, part_cfg);
  part->add_option("--export-variants", export_dir, "write every physical variant as QASM into this directory");

  // run
  auto* run = app.add_subcommand("run", "partition, execute, reconstruct and report");
  InputFlags run_in;
  ConfigFlags run_cfg;
  std::string out_dir = "out";
  std::string replay;
  bool plan_only = false;
  add_input_flags(run, run_in);
  add_run_flags(run, run_cfg);
  run->add_option("-o,--out-dir", out_dir, "artifact directory");
  run->add_option("--replay", replay, "rerun the configuration recorded in a report.json");
  run->add_flag("--plan-only", plan_only, "stop after the execution decisions");

  // report
  auto* rep = app.add_subcommand("report", "merge report.json files into one table");
  std::vector<std::string> rep_files;
  std::string rep_out;
  rep->add_option("reports", rep_files, "report.json files")->required();
  rep->add_option("-o,--output", rep_out, "tables.csv path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUser;
  }

  try {
    if (*gen) {
      const auto kind = hqc::benchmark_from_name(gen_kind);
      if (!kind) throw hqc::StageError("generate", "unknown benchmark '" + gen_kind + "'", true);
      hqc::GeneratorOptions opts;
      if (secret_opt->count()) opts.secret = gen_secret;
      if (depth_opt->count()) opts.depth = gen_depth;
      if (seed_opt->count()) opts.seed = gen_seed;
      hqc::Circuit c;
      try {
        c = hqc::generate(*kind, gen_n, opts);
      } catch (const std::invalid_argument& e) {
        throw hqc::StageError("generate", e.what(), true);
      } catch (const hqc::CircuitError& e) {
        throw hqc::StageError("generate", e.what(), true);
      }
      write_text(gen_out, hqc::emit_qasm(c));
      return kExitOk;
    }

    if (*part) {
      const auto config = make_config(part_in, part_cfg);
      const auto input = hqc::load_input(config);
      const auto plan = hqc::make_plan(input, config);
      if (!export_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(export_dir, ec);
        if (ec) throw hqc::StageError("output", "cannot create " + export_dir, true);
        for (const auto& s : plan.candidate.subcircuits.subcircuits) {
          for (const auto& v : hqc::enumerate_variants(s).physical) {
            const auto path = std::filesystem::path(export_dir) / hqc::variant_file_name(input.name(), s.id, v.label);
            write_text(path.string(), hqc::emit_qasm(v.circuit));
          }
        }
      }
      std::cout << hqc::candidate_json(plan.candidate).dump(2) << '\n';
      return kExitOk;
    }

    if (*run) {
      hqc::RunConfig config;
      if (!replay.empty()) {
        config = hqc::config_from_report(read_json(replay));
      } else {
        config = make_config(run_in, run_cfg);
      }
      config.out_dir = out_dir;
      if (replay.empty() || run->count("--threads")) config.workers = run_cfg.workers;
      const auto input = hqc::load_input(config);
      const auto outcome = hqc::run_pipeline(input, config, !plan_only);
      hqc::write_artifacts(outcome, config, input);
      nlohmann::ordered_json summary;
      summary["out_dir"] = out_dir;
      summary["K"] = outcome.report.k;
      summary["C"] = outcome.report.cut_points;
      summary["saved_percent"] = outcome.report.saved_percent;
      summary["executed"] = outcome.distribution.has_value();
      std::cout << summary.dump() << '\n';
      return kExitOk;
    }

    if (*rep) {
      std::string text = hqc::tables_csv_header();
      for (const auto& f : rep_files) text += hqc::tables_csv_row(hqc::report_from_json(read_json(f)));
      write_text(rep_out, text);
      return kExitOk;
    }
  } catch (const hqc::StageError& e) {
    return fail(e.stage(), e.what(), e.user_error());
  } catch (const std::exception& e) {
    return fail("internal", e.what(), false);
  }
  return kExitOk;
}
