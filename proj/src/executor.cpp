#include "hqc/executor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "hqc/statevector.hpp"

namespace hqc {

std::uint64_t memory_requirement(std::size_t num_qubits, std::uint64_t bytes_per_amplitude) {
  if (bytes_per_amplitude == 0) return 0;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (num_qubits >= 64) return kMax;
  const std::uint64_t states = std::uint64_t{1} << num_qubits;
  if (states > kMax / bytes_per_amplitude) return kMax;
  return states * bytes_per_amplitude;
}

std::size_t max_qubits_for(std::uint64_t memory_bytes, std::uint64_t bytes_per_amplitude) {
  std::size_t n = 0;
  while (n < 63 && memory_requirement(n + 1, bytes_per_amplitude) <= memory_bytes) ++n;
  return n;
}

std::string_view reason_name(DecisionReason r) {
  switch (r) {
    case DecisionReason::NonClifford: return "non_clifford";
    case DecisionReason::Memory: return "memory";
    case DecisionReason::Entanglement: return "entanglement";
    case DecisionReason::WithinBudget: return "within_budget";
    case DecisionReason::Forced: return "forced";
  }
  return "?";
}

Decision decide(const Subcircuit& s, const ResourceBudget& budget) {
  if (s.circuit.has_non_clifford()) return {ExecMode::Quantum, DecisionReason::NonClifford};
  if (memory_requirement(s.width(), budget.bytes_per_amplitude) > budget.memory_bytes) {
    return {ExecMode::Quantum, DecisionReason::Memory};
  }
  if (s.circuit.count_multi_qubit() > budget.max_multiqubit_gates) {
    return {ExecMode::Quantum, DecisionReason::Entanglement};
  }
  return {ExecMode::Classical, DecisionReason::WithinBudget};
}

namespace {

Distribution to_sparse(const std::vector<double>& probs) {
  Distribution d;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > 1e-16) d.emplace(k, probs[k]);
  }
  return d;
}

void check_measured(const Circuit& c, std::span<const int> measured) {
  if (measured.size() > 63) throw ExecutionError("too many measured wires");
  for (int w : measured) {
    if (w < 0 || w >= c.num_qubits()) throw ExecutionError("measured wire out of range");
  }
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Sampler {
 public:
  explicit Sampler(const std::vector<double>& probs) {
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
      if (probs[k] <= 0.0) continue;
      acc += probs[k];
      keys_.push_back(k);
      cdf_.push_back(acc);
    }
  }

  std::uint64_t draw(std::mt19937_64& rng) const {
    const double u = uniform01(rng) * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return keys_[static_cast<std::size_t>(it - cdf_.begin())];
  }

 private:
  std::vector<std::uint64_t> keys_;
  std::vector<double> cdf_;
};

}  // namespace

Distribution run_classical(const Circuit& c, std::span<const int> measured, const ResourceBudget& budget) {
  if (memory_requirement(static_cast<std::size_t>(c.num_qubits()), budget.bytes_per_amplitude) >
      budget.memory_bytes) {
    throw ExecutionError("classical execution of " + std::to_string(c.num_qubits()) +
                         " qubits exceeds the memory budget");
  }
  check_measured(c, measured);
  StateVector sv(c.num_qubits());
  for (const auto& g : c.gates()) sv.apply(g);
  return to_sparse(sv.marginal(measured));
}

Distribution run_quantum_sim(const Circuit& c, std::span<const int> measured, std::size_t shots,
                             const NoiseModel& noise, std::uint64_t seed, int width_cap) {
  if (c.num_qubits() > width_cap) {
    throw ExecutionError("width " + std::to_string(c.num_qubits()) + " exceeds the simulator cap of " +
                         std::to_string(width_cap));
  }
  if (shots == 0) throw ExecutionError("shots must be positive");
  check_measured(c, measured);

  StateVector ideal(c.num_qubits());
  for (const auto& g : c.gates()) ideal.apply(g);
  const Sampler ideal_sampler(ideal.marginal(measured));

  std::mt19937_64 rng(seed);
  std::map<std::uint64_t, std::size_t> counts;
  const auto& gates = c.gates();
  std::vector<std::uint64_t> faults(gates.size(), 0);  // 0: none, else Pauli string code

  for (std::size_t shot = 0; shot < shots; ++shot) {
    bool faulty = false;
    if (noise.enabled) {
      for (std::size_t g = 0; g < gates.size(); ++g) {
        const double eps = gates[g].is_multi_qubit() ? noise.eps_multi : noise.eps_single;
        faults[g] = 0;
        if (uniform01(rng) < eps) {
          const std::uint64_t strings = std::uint64_t{1} << (2 * gates[g].qubits.size());
          faults[g] = 1 + rng() % (strings - 1);
          faulty = true;
        }
      }
    }
    if (!faulty) {
      ++counts[ideal_sampler.draw(rng)];
      continue;
    }
    StateVector sv(c.num_qubits());
    for (std::size_t g = 0; g < gates.size(); ++g) {
      sv.apply(gates[g]);
      std::uint64_t code = faults[g];
      for (int q : gates[g].qubits) {
        sv.apply_pauli(static_cast<int>(code & 3U), q);
        code >>= 2;
      }
    }
    ++counts[Sampler(sv.marginal(measured)).draw(rng)];
  }

  Distribution d;
  for (const auto& [k, n] : counts) d.emplace(k, static_cast<double>(n) / static_cast<double>(shots));
  return d;
}

std::uint64_t variant_seed(std::uint64_t seed, int subcircuit, int physical_variant) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ static_cast<std::uint64_t>(subcircuit));
  return splitmix(h ^ (static_cast<std::uint64_t>(physical_variant) << 20));
}

ExecutionResults execute_variants(const SubcircuitSet& subs, const std::vector<VariantSet>& variants,
                                  const ResourceBudget& budget, const ExecutionOptions& options) {
  if (variants.size() != subs.subcircuits.size()) throw ExecutionError("variant sets do not match subcircuits");

  struct Job {
    int sub;
    int phys;
  };
  std::vector<Job> jobs;
  ExecutionResults results(subs.subcircuits.size());
  std::vector<std::vector<int>> measured(subs.subcircuits.size());
  for (std::size_t s = 0; s < subs.subcircuits.size(); ++s) {
    if (!subs.subcircuits[s].mode) throw ExecutionError("subcircuit " + std::to_string(s) + " has no execution mode");
    measured[s] = subs.subcircuits[s].measured_wires();
    results[s].resize(variants[s].physical.size());
    for (std::size_t v = 0; v < variants[s].physical.size(); ++v) {
      jobs.push_back({static_cast<int>(s), static_cast<int>(v)});
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const auto [s, v] = jobs[j];
      try {
        const auto& sub = subs.subcircuits[static_cast<std::size_t>(s)];
        const auto& pv = variants[static_cast<std::size_t>(s)].physical[static_cast<std::size_t>(v)];
        VariantResult r;
        r.subcircuit = s;
        r.physical = v;
        r.label = pv.label;
        r.mode = *sub.mode;
        const auto& m = measured[static_cast<std::size_t>(s)];
        if (r.mode == ExecMode::Classical) {
          r.dist = run_classical(pv.circuit, m, budget);
        } else {
          r.dist = run_quantum_sim(pv.circuit, m, budget.shots, options.noise, variant_seed(options.seed, s, v),
                                   budget.simulator_width_cap);
        }
        results[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)] = std::move(r);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!first_error) first_error = std::current_exception();
        next.store(jobs.size());
      }
    }
  };

  unsigned workers = options.workers ? options.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace hqc
