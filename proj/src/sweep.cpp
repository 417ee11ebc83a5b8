#include "hqc/sweep.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace hqc {

SubcircuitSet reallocate_shared_qubits(const SubcircuitSet& subs, std::optional<std::size_t> max_part_nodes) {
  const Circuit& src = subs.source;
  std::vector<int> gate_part = subs.gate_part;
  const auto& gates = src.gates();

  std::vector<std::size_t> load;
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const auto p = static_cast<std::size_t>(gate_part[g]);
    if (p >= load.size()) load.resize(p + 1, 0);
    load[p] += gates[g].qubits.size();
  }

  for (int q = 0; q < src.num_qubits(); ++q) {
    std::set<int> parts;
    std::set<int> multi_parts;
    std::vector<std::size_t> singles;
    int first_part = -1;
    for (std::size_t g = 0; g < gates.size(); ++g) {
      const auto& qs = gates[g].qubits;
      if (std::find(qs.begin(), qs.end(), q) == qs.end()) continue;
      const int p = gate_part[g];
      if (first_part == -1) first_part = p;
      parts.insert(p);
      if (gates[g].is_multi_qubit()) {
        multi_parts.insert(p);
      } else {
        singles.push_back(g);
      }
    }
    if (parts.size() <= 1 || multi_parts.size() > 1) continue;
    const int target = multi_parts.empty() ? first_part : *multi_parts.begin();

    std::vector<std::size_t> next = load;
    for (std::size_t g : singles) {
      --next[static_cast<std::size_t>(gate_part[g])];
      ++next[static_cast<std::size_t>(target)];
    }
    if (max_part_nodes) {
      const bool fits = std::all_of(next.begin(), next.end(),
                                    [&](std::size_t n) { return n > 0 && n <= *max_part_nodes; });
      if (!fits) continue;
    }
    load = std::move(next);
    for (std::size_t g : singles) gate_part[g] = target;
  }
  return extract_subcircuits(src, gate_part);
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// strict weak order for candidate selection; true when a beats b
bool better(const PartitionCandidate& a, const PartitionCandidate& b) {
  if (a.valid != b.valid) return a.valid;
  if (a.cut_points != b.cut_points) return a.cut_points < b.cut_points;
  if (a.k != b.k) return a.k < b.k;
  return a.subcircuits.max_width() < b.subcircuits.max_width();
}

}  // namespace

PartitionCandidate evaluate_assignment(const Circuit& scheduled, const TemporalHypergraph& hg,
                                       const WeightedGraph& g, PartitionAssignment raw, double alpha) {
  PartitionCandidate c;
  c.k = raw.num_parts;
  c.edge_cut = cut_weight(g, raw);
  c.gate_violations = count_gate_violations(hg, raw);
  PartitionAssignment repaired = repair_gate_colocation(hg, std::move(raw));
  c.balanced = is_balanced(repaired, alpha);
  c.cut_points_before_reallocation = count_cut_points(hg, repaired);

  SubcircuitSet extracted = extract_subcircuits(scheduled, hg, repaired);
  const bool all_parts = static_cast<int>(extracted.subcircuits.size()) == repaired.num_parts;
  std::optional<std::size_t> cap;
  if (c.balanced) cap = max_part_size(hg.num_nodes(), repaired.num_parts, alpha);
  c.subcircuits = reallocate_shared_qubits(extracted, cap);
  c.assignment = assignment_from_subcircuits(c.subcircuits, hg);
  c.cut_points = count_cut_points(hg, c.assignment);
  c.valid = c.balanced && all_parts && c.assignment.num_parts == repaired.num_parts &&
            is_balanced(c.assignment, alpha);
  return c;
}

PartitionCandidate evaluate_k(const Circuit& scheduled, const TemporalHypergraph& hg, const WeightedGraph& g,
                              int k, const SweepOptions& options) {
  PartitionCandidate best;
  bool have = false;
  const int trials = std::max(1, options.trials);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = mix(options.seed ^ mix(static_cast<std::uint64_t>(k) * 1315423911ULL + t));
    PartitionOptions po;
    po.alpha = options.alpha;
    PartitionCandidate c = evaluate_assignment(scheduled, hg, g, partition_k(g, k, seed, po), options.alpha);
    const bool wins = !have || (c.valid != best.valid ? c.valid
                                : c.cut_points != best.cut_points ? c.cut_points < best.cut_points
                                                                  : c.edge_cut < best.edge_cut);
    if (wins) {
      best = std::move(c);
      have = true;
    }
  }
  return best;
}

PartitionCandidate single_part_candidate(const Circuit& c) {
  const Circuit scheduled = c.scheduled() ? c : schedule_asap(c);
  const TemporalHypergraph hg = build_hypergraph(scheduled);
  PartitionCandidate cand;
  cand.k = 1;
  cand.subcircuits = extract_subcircuits(scheduled, std::vector<int>(scheduled.size(), 0));
  cand.assignment.num_parts = 1;
  cand.assignment.part_of.assign(hg.num_nodes(), 0);
  cand.balanced = true;
  cand.valid = true;
  return cand;
}

std::vector<PartitionCandidate> sweep_candidates(const Circuit& c, const SweepOptions& options) {
  const Circuit scheduled = c.scheduled() ? c : schedule_asap(c);
  const TemporalHypergraph hg = build_hypergraph(scheduled);
  const WeightedGraph g = clique_expand(hg);

  std::vector<int> ks;
  const int k_max = std::min(scheduled.num_qubits() / 2, options.k_cap);
  for (int k = 2; k <= k_max; ++k) {
    if (static_cast<std::size_t>(k) <= g.num_nodes) ks.push_back(k);
  }

  std::vector<PartitionCandidate> out(ks.size());
  const std::size_t width = options.workers ? options.workers : ks.size();
  for (std::size_t start = 0; start < ks.size(); start += std::max<std::size_t>(width, 1)) {
    std::vector<std::future<PartitionCandidate>> batch;
    const std::size_t end = std::min(ks.size(), start + std::max<std::size_t>(width, 1));
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(std::launch::async,
                                 [&, k = ks[i]] { return evaluate_k(scheduled, hg, g, k, options); }));
    }
    for (std::size_t i = start; i < end; ++i) out[i] = batch[i - start].get();
  }
  return out;
}

PartitionCandidate select_candidate(const Circuit& scheduled, std::vector<PartitionCandidate> candidates) {
  std::erase_if(candidates, [](const PartitionCandidate& c) { return c.num_parts() < 2; });
  if (candidates.empty()) return single_part_candidate(scheduled);
  auto it = std::min_element(candidates.begin(), candidates.end(), better);
  return std::move(*it);
}

PartitionCandidate sweep_k(const Circuit& c, const SweepOptions& options) {
  const Circuit scheduled = c.scheduled() ? c : schedule_asap(c);
  if (scheduled.num_qubits() < 4) return single_part_candidate(scheduled);
  return select_candidate(scheduled, sweep_candidates(scheduled, options));
}

}  // namespace hqc
