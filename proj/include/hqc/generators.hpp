#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hqc/circuit.hpp"

namespace hqc {

enum class BenchmarkKind { BV, GHZ, QFT, Random };

std::optional<BenchmarkKind> benchmark_from_name(std::string_view name);
std::string_view benchmark_name(BenchmarkKind kind);

struct GeneratorOptions {
  /// BV secret, one character per data qubit ('0'/'1'); default all ones.
  std::optional<std::string> secret;
  std::optional<int> depth;
  std::optional<std::uint64_t> seed;
};

/// Bernstein-Vazirani over n qubits: n-1 data qubits plus the ancilla q[n-1].
Circuit make_bv(int n, std::optional<std::string> secret = std::nullopt);
Circuit make_ghz(int n);
/// Textbook QFT: H and cp(pi/2^k) ladder followed by the reversal swaps.
Circuit make_qft(int n);
/// Layered random circuit. Each layer pairs up a shuffled qubit order; a pair
/// receives a cx/cz with probability 1/2, otherwise each qubit gets a random
/// single-qubit gate. Rotation angles are multiples of pi/4.
Circuit make_random(int n, int depth, std::uint64_t seed);

/// Dispatches on kind and validates the option combination.
Circuit generate(BenchmarkKind kind, int n, const GeneratorOptions& options = {});

}  // namespace hqc
