#pragma once

#include <cstdint>
#include <vector>

#include "hqc/cutter.hpp"
#include "hqc/executor.hpp"
#include "hqc/reconstructor.hpp"

#include "dense_oracle.hpp"

namespace support {

struct Executed {
  std::vector<hqc::VariantSet> variants;
  hqc::ExecutionResults results;
};

/// Runs every variant of every subcircuit in one mode.
inline Executed execute_all(hqc::SubcircuitSet& subs, hqc::ExecMode mode, std::uint64_t seed = 0,
                            std::size_t shots = 1000) {
  Executed e;
  for (auto& s : subs.subcircuits) {
    s.mode = mode;
    e.variants.push_back(hqc::enumerate_variants(s));
  }
  hqc::ResourceBudget budget;
  budget.shots = shots;
  hqc::ExecutionOptions opts;
  opts.seed = seed;
  opts.workers = 1;
  e.results = hqc::execute_variants(subs, e.variants, budget, opts);
  return e;
}

inline hqc::FullDistribution oracle_distribution(const hqc::Circuit& c) {
  hqc::FullDistribution d;
  d.num_qubits = c.num_qubits();
  d.probs = oracle::probabilities(c);
  return d;
}

/// Exact-path reconstruction of a split circuit, all subcircuits classical.
inline hqc::FullDistribution reconstruct_exact(hqc::SubcircuitSet subs) {
  auto e = execute_all(subs, hqc::ExecMode::Classical);
  return hqc::reconstruct(subs, e.variants, e.results, hqc::ReconstructionPath::Exact);
}

}  // namespace support
