#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hqc/circuit.hpp"
#include "hqc/executor.hpp"
#include "hqc/generators.hpp"
#include "hqc/metrics.hpp"
#include "hqc/reconstructor.hpp"
#include "hqc/sweep.hpp"

namespace hqc {

/// Stage failures carry the stage name for the CLI's error JSON.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what, bool user_error)
      : std::runtime_error(what), stage_(std::move(stage)), user_error_(user_error) {}
  const std::string& stage() const { return stage_; }
  bool user_error() const { return user_error_; }

 private:
  std::string stage_;
  bool user_error_;
};

struct GeneratorSpec {
  BenchmarkKind kind = BenchmarkKind::GHZ;
  int n = 0;
  GeneratorOptions options;
};

/// "kind:n[:key=value...]", e.g. "ghz:10", "bv:8:secret=0110101",
/// "random:10:depth=20:seed=7".
GeneratorSpec parse_generator_spec(const std::string& text);
std::string to_string(const GeneratorSpec& spec);

enum class ModeOverride { Auto, Classical, Quantum };

struct RunConfig {
  std::optional<std::string> input_file;
  std::optional<GeneratorSpec> generator;
  std::optional<std::string> qasm;  // embedded source; set when replaying
  std::optional<std::string> name;  // circuit name override

  int k_cap = 8;
  std::optional<int> forced_k;  // skip the sweep and partition into exactly K
  std::uint64_t seed = 0;
  std::size_t shots = 1000;
  std::optional<std::uint64_t> memory_bytes;            // unset: detect
  std::optional<std::size_t> multi_gate_threshold;      // unset: derived from memory
  bool noise = false;
  ModeOverride mode = ModeOverride::Auto;
  int simulator_width_cap = 25;
  std::size_t max_exec_cuts = 6;  // above this the run reports metrics only
  unsigned workers = 0;
  std::filesystem::path out_dir = ".";
};

/// Parses "123", "512M", "8G" (binary units).
std::uint64_t parse_byte_size(const std::string& text);

/// Physical memory of this machine in bytes (0 if unknown).
std::uint64_t detect_memory_bytes();

/// Budget with defaults resolved: detected memory when unset, and an
/// entanglement threshold equal to the qubit capacity of that memory.
ResourceBudget resolve_budget(const RunConfig& config);

/// Loads the input named by the config (embedded QASM, file or generator).
Circuit load_input(const RunConfig& config);

struct Timings {
  double partition_s = 0;
  double execution_s = 0;
  double reconstruction_s = 0;
  double total_s = 0;
};

struct Plan {
  Circuit circuit;  // scheduled
  PartitionCandidate candidate;
  std::vector<Decision> decisions;
  ResourceBudget budget;
};

/// Schedule, sweep (or forced K), decide.
Plan make_plan(const Circuit& input, const RunConfig& config);

struct RunOutcome {
  Plan plan;
  RunReport report;
  std::optional<FullDistribution> distribution;
  std::optional<ReconstructionPath> path;
  std::string skipped_reason;  // set when execution was not attempted
  Timings timings;
};

/// The whole workflow. With execute=false it stops after the decisions and
/// reports metrics only.
RunOutcome run_pipeline(const Circuit& input, const RunConfig& config, bool execute);

nlohmann::ordered_json config_to_json(const RunConfig& config, const Circuit& input);
/// Rebuilds the config from a report.json document; the embedded QASM
/// becomes the input.
RunConfig config_from_report(const nlohmann::json& report);
RunReport report_from_json(const nlohmann::json& report);

nlohmann::ordered_json candidate_json(const PartitionCandidate& c);
nlohmann::ordered_json report_json(const RunOutcome& outcome, const RunConfig& config, const Circuit& input);
nlohmann::ordered_json distribution_json(const FullDistribution& d);

std::string tables_csv_header();
std::string tables_csv_row(const RunReport& r);
std::string distribution_csv(const FullDistribution& d);

/// report.json, tables.csv, distribution.json/.csv (when executed) and
/// plotdata/{noise,cost}.csv under config.out_dir.
void write_artifacts(const RunOutcome& outcome, const RunConfig& config, const Circuit& input);

}  // namespace hqc
