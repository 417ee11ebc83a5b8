#include "hqc/reconstructor.hpp"

#include <algorithm>
#include <cmath>

namespace hqc {

namespace {

using Sparse = std::map<std::uint64_t, double>;

std::size_t ipow4(std::size_t e) { return std::size_t{1} << (2 * e); }

void check_complete(const SubcircuitSet& subs, const std::vector<VariantSet>& variants,
                    const ExecutionResults& results) {
  if (variants.size() != subs.subcircuits.size() || results.size() != subs.subcircuits.size()) {
    throw ReconstructionError("missing subcircuit results");
  }
  for (std::size_t s = 0; s < results.size(); ++s) {
    if (results[s].size() != variants[s].physical.size()) {
      throw ReconstructionError("missing variant for subcircuit " + std::to_string(s));
    }
    for (std::size_t v = 0; v < results[s].size(); ++v) {
      if (results[s][v].dist.empty() || results[s][v].physical != static_cast<int>(v)) {
        throw ReconstructionError("missing variant " + variants[s].physical[v].label.str() + " of subcircuit " +
                                  std::to_string(s));
      }
    }
  }
}

// Per-subcircuit terms for every labelling of the cuts it touches. Cuts are
// ordered by id; label digit order is I, X, Y, Z.
struct SubTerms {
  std::vector<int> cuts;
  std::vector<Sparse> terms;  // indexed by base-4 label over `cuts`
};

SubTerms build_terms(const Subcircuit& sub, const VariantSet& vs, const std::vector<VariantResult>& res) {
  SubTerms st;
  st.cuts = sub.out_cuts;
  st.cuts.insert(st.cuts.end(), sub.in_cuts.begin(), sub.in_cuts.end());
  std::sort(st.cuts.begin(), st.cuts.end());

  const std::size_t n_out_bits = sub.output_wires.size();
  std::vector<int> out_qubit;
  for (int w : sub.output_wires) out_qubit.push_back(sub.wires[static_cast<std::size_t>(w)].qubit);

  // to_global[k] for readout bits; small widths, so cache per local readout
  auto to_global = [&](std::uint64_t local) {
    std::uint64_t g = 0;
    for (std::size_t j = 0; j < n_out_bits; ++j) {
      if (local >> j & 1U) g |= std::uint64_t{1} << out_qubit[j];
    }
    return g;
  };

  const std::size_t n_labels = ipow4(st.cuts.size());
  st.terms.resize(n_labels);
  std::vector<Basis> out_b(sub.out_cuts.size());
  std::vector<Basis> in_b(sub.in_cuts.size());
  std::vector<Prep> preps(sub.in_cuts.size());
  for (std::size_t idx = 0; idx < n_labels; ++idx) {
    std::size_t r = idx;
    for (std::size_t i = st.cuts.size(); i-- > 0;) {
      const Basis b = kBases[r % 4];
      r /= 4;
      const int cut = st.cuts[i];
      auto it = std::lower_bound(sub.out_cuts.begin(), sub.out_cuts.end(), cut);
      if (it != sub.out_cuts.end() && *it == cut) {
        out_b[static_cast<std::size_t>(it - sub.out_cuts.begin())] = b;
      } else {
        auto jt = std::lower_bound(sub.in_cuts.begin(), sub.in_cuts.end(), cut);
        in_b[static_cast<std::size_t>(jt - sub.in_cuts.begin())] = b;
      }
    }

    Sparse& term = st.terms[idx];
    const std::size_t n_prep = ipow4(in_b.size());
    for (std::size_t pidx = 0; pidx < n_prep; ++pidx) {
      std::size_t pr = pidx;
      double coef = 1.0;
      for (std::size_t i = in_b.size(); i-- > 0;) {
        preps[i] = kPreps[pr % 4];
        pr /= 4;
        coef *= downstream_weight(in_b[i], preps[i]);
      }
      if (coef == 0.0) continue;
      const auto& dist = res[static_cast<std::size_t>(vs.physical_index(out_b, preps))].dist;
      for (const auto& [k, p] : dist) {
        const std::uint64_t readout = n_out_bits >= 64 ? k : (k & ((std::uint64_t{1} << n_out_bits) - 1));
        const std::uint64_t cut_bits = n_out_bits >= 64 ? 0 : (k >> n_out_bits);
        double sign = 1.0;
        for (std::size_t i = 0; i < out_b.size(); ++i) {
          sign *= upstream_weight(out_b[i], static_cast<int>(cut_bits >> i & 1U));
        }
        term[to_global(readout)] += coef * sign * p;
      }
    }
  }
  return st;
}

Sparse outer(const Sparse& a, const Sparse& b, double scale) {
  Sparse out;
  for (const auto& [ka, va] : a) {
    for (const auto& [kb, vb] : b) out[ka | kb] += scale * va * vb;
  }
  return out;
}

void accumulate(Sparse& into, const Sparse& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

std::vector<SubTerms> all_terms(const SubcircuitSet& subs, const std::vector<VariantSet>& variants,
                                const ExecutionResults& results) {
  check_complete(subs, variants, results);
  std::vector<SubTerms> terms;
  terms.reserve(subs.subcircuits.size());
  for (std::size_t s = 0; s < subs.subcircuits.size(); ++s) {
    terms.push_back(build_terms(subs.subcircuits[s], variants[s], results[s]));
  }
  return terms;
}

std::size_t label_index(const std::vector<int>& cuts, const std::vector<int>& digit_of_cut) {
  std::size_t idx = 0;
  for (int c : cuts) idx = idx * 4 + static_cast<std::size_t>(digit_of_cut[static_cast<std::size_t>(c)]);
  return idx;
}

}  // namespace

double normalization_tolerance(ReconstructionPath path) {
  return path == ReconstructionPath::Exact ? 1e-6 : 0.15;
}

double upstream_weight(Basis basis, int outcome) {
  if (basis == Basis::I) return 1.0;
  return outcome == 0 ? 1.0 : -1.0;
}

double downstream_weight(Basis basis, Prep prep) {
  switch (basis) {
    case Basis::I:
      return (prep == Prep::Zero || prep == Prep::One) ? 1.0 : 0.0;
    case Basis::Z:
      return prep == Prep::Zero ? 1.0 : (prep == Prep::One ? -1.0 : 0.0);
    case Basis::X:
      return prep == Prep::Plus ? 2.0 : (prep == Prep::IPlus ? 0.0 : -1.0);
    case Basis::Y:
      return prep == Prep::IPlus ? 2.0 : (prep == Prep::Plus ? 0.0 : -1.0);
  }
  return 0.0;
}

std::uint64_t assemble_bitstring(std::span<const std::uint64_t> local_outcomes, const SubcircuitSet& subs) {
  if (local_outcomes.size() != subs.subcircuits.size()) {
    throw ReconstructionError("one readout per subcircuit is required");
  }
  const int n = subs.num_qubits();
  std::vector<int> owners(static_cast<std::size_t>(n), 0);
  std::vector<char> touched(static_cast<std::size_t>(n), 0);
  for (const auto& g : subs.source.gates()) {
    for (int q : g.qubits) touched[static_cast<std::size_t>(q)] = 1;
  }
  std::uint64_t global = 0;
  for (std::size_t s = 0; s < subs.subcircuits.size(); ++s) {
    const auto& sub = subs.subcircuits[s];
    for (std::size_t j = 0; j < sub.output_wires.size(); ++j) {
      const int q = sub.wires[static_cast<std::size_t>(sub.output_wires[j])].qubit;
      ++owners[static_cast<std::size_t>(q)];
      if (local_outcomes[s] >> j & 1U) global |= std::uint64_t{1} << q;
    }
  }
  for (int q = 0; q < n; ++q) {
    const int o = owners[static_cast<std::size_t>(q)];
    if (touched[static_cast<std::size_t>(q)] ? o != 1 : o != 0) {
      throw ReconstructionError("qubit " + std::to_string(q) + " is read out by " + std::to_string(o) +
                                " subcircuits");
    }
  }
  return global;
}

std::string bitstring_to_string(std::uint64_t bits, int num_qubits) {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if (bits >> q & 1U) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

FullDistribution reconstruct(const SubcircuitSet& subs, const std::vector<VariantSet>& variants,
                             const ExecutionResults& results, ReconstructionPath path) {
  const auto terms = all_terms(subs, variants, results);

  std::vector<int> open;
  std::vector<Sparse> data{Sparse{{0, 1.0}}};
  std::vector<int> digit(subs.num_cuts(), 0);

  for (const auto& st : terms) {
    std::vector<int> all;
    std::set_union(open.begin(), open.end(), st.cuts.begin(), st.cuts.end(), std::back_inserter(all));
    std::vector<int> closing;
    std::set_intersection(open.begin(), open.end(), st.cuts.begin(), st.cuts.end(), std::back_inserter(closing));
    std::vector<int> next_open;
    std::set_difference(all.begin(), all.end(), closing.begin(), closing.end(), std::back_inserter(next_open));
    const double scale = std::ldexp(1.0, -static_cast<int>(closing.size()));

    std::vector<Sparse> next(ipow4(next_open.size()));
    const std::size_t combos = ipow4(all.size());
    for (std::size_t idx = 0; idx < combos; ++idx) {
      std::size_t r = idx;
      for (std::size_t i = all.size(); i-- > 0;) {
        digit[static_cast<std::size_t>(all[i])] = static_cast<int>(r % 4);
        r /= 4;
      }
      const Sparse& lhs = data[label_index(open, digit)];
      const Sparse& rhs = st.terms[label_index(st.cuts, digit)];
      if (lhs.empty() || rhs.empty()) continue;
      accumulate(next[label_index(next_open, digit)], outer(lhs, rhs, scale));
    }
    open = std::move(next_open);
    data = std::move(next);
  }
  if (!open.empty()) throw ReconstructionError("cut left open after contraction");

  FullDistribution out;
  out.num_qubits = subs.num_qubits();
  double total = 0.0;
  for (const auto& [k, v] : data.front()) {
    if (v > 0.0) total += v;
  }
  const double eps = normalization_tolerance(path);
  if (!(std::abs(total - 1.0) <= eps)) {
    throw ReconstructionError("reconstructed total " + std::to_string(total) + " is outside tolerance");
  }
  for (const auto& [k, v] : data.front()) {
    if (v > 0.0) out.probs.emplace(k, v / total);
  }
  return out;
}

FullDistribution reconstruct_naive(const SubcircuitSet& subs, const std::vector<VariantSet>& variants,
                                   const ExecutionResults& results) {
  const auto terms = all_terms(subs, variants, results);
  const std::size_t c = subs.num_cuts();
  std::vector<int> digit(c, 0);
  Sparse sum;
  for (std::size_t idx = 0; idx < ipow4(c); ++idx) {
    std::size_t r = idx;
    for (std::size_t i = c; i-- > 0;) {
      digit[i] = static_cast<int>(r % 4);
      r /= 4;
    }
    Sparse prod{{0, 1.0}};
    for (const auto& st : terms) {
      prod = outer(prod, st.terms[label_index(st.cuts, digit)], 1.0);
      if (prod.empty()) break;
    }
    accumulate(sum, prod);
  }
  FullDistribution out;
  out.num_qubits = subs.num_qubits();
  const double scale = std::ldexp(1.0, -static_cast<int>(c));
  for (const auto& [k, v] : sum) out.probs.emplace(k, v * scale);
  return out;
}

double total_variation(const FullDistribution& a, const FullDistribution& b) {
  double d = 0.0;
  auto ia = a.probs.begin();
  auto ib = b.probs.begin();
  while (ia != a.probs.end() || ib != b.probs.end()) {
    if (ib == b.probs.end() || (ia != a.probs.end() && ia->first < ib->first)) {
      d += std::abs(ia->second);
      ++ia;
    } else if (ia == a.probs.end() || ib->first < ia->first) {
      d += std::abs(ib->second);
      ++ib;
    } else {
      d += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return d / 2;
}

}  // namespace hqc
