#include "hqc/generators.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

namespace hqc {

std::optional<BenchmarkKind> benchmark_from_name(std::string_view name) {
  if (name == "bv") return BenchmarkKind::BV;
  if (name == "ghz") return BenchmarkKind::GHZ;
  if (name == "qft") return BenchmarkKind::QFT;
  if (name == "random") return BenchmarkKind::Random;
  return std::nullopt;
}

std::string_view benchmark_name(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::BV: return "bv";
    case BenchmarkKind::GHZ: return "ghz";
    case BenchmarkKind::QFT: return "qft";
    case BenchmarkKind::Random: return "random";
  }
  return "?";
}

Circuit make_bv(int n, std::optional<std::string> secret) {
  if (n < 1) throw CircuitError("bv needs at least one qubit");
  const int data = n - 1;
  const std::string s = secret.value_or(std::string(static_cast<std::size_t>(data), '1'));
  if (static_cast<int>(s.size()) != data) {
    throw CircuitError("bv secret must have length n-1 = " + std::to_string(data));
  }
  if (s.find_first_not_of("01") != std::string::npos) throw CircuitError("bv secret must be a 0/1 string");
  Circuit c(n, "bv" + std::to_string(n));
  const int anc = n - 1;
  c.add(GateKind::X, {anc});
  for (int q = 0; q < n; ++q) c.add(GateKind::H, {q});
  for (int q = 0; q < data; ++q) {
    if (s[static_cast<std::size_t>(q)] == '1') c.add(GateKind::CX, {q, anc});
  }
  for (int q = 0; q < data; ++q) c.add(GateKind::H, {q});
  return c;
}

Circuit make_ghz(int n) {
  if (n < 1) throw CircuitError("ghz needs at least one qubit");
  Circuit c(n, "ghz" + std::to_string(n));
  c.add(GateKind::H, {0});
  for (int q = 0; q + 1 < n; ++q) c.add(GateKind::CX, {q, q + 1});
  return c;
}

Circuit make_qft(int n) {
  if (n < 1) throw CircuitError("qft needs at least one qubit");
  Circuit c(n, "qft" + std::to_string(n));
  for (int j = 0; j < n; ++j) {
    c.add(GateKind::H, {j});
    for (int k = j + 1; k < n; ++k) {
      c.add(GateKind::CP, {k, j}, {std::numbers::pi / std::ldexp(1.0, k - j)});
    }
  }
  for (int i = 0; i < n / 2; ++i) c.add(GateKind::Swap, {i, n - 1 - i});
  return c;
}

namespace {

// mt19937_64 output is fully specified; std distributions are not, so draws
// are reduced by hand to stay reproducible across standard libraries.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

}  // namespace

Circuit make_random(int n, int depth, std::uint64_t seed) {
  if (n < 1) throw CircuitError("random needs at least one qubit");
  if (depth < 0) throw CircuitError("random depth must be nonnegative");
  constexpr std::array<GateKind, 11> kSingles{GateKind::H, GateKind::X, GateKind::Y, GateKind::Z,
                                              GateKind::S, GateKind::Sdg, GateKind::T, GateKind::Tdg,
                                              GateKind::RZ, GateKind::RX, GateKind::RY};
  std::mt19937_64 rng(seed);
  Circuit c(n, "random" + std::to_string(n));
  std::vector<int> order(static_cast<std::size_t>(n));

  auto single = [&](int q) {
    const GateKind k = kSingles[draw_below(rng, kSingles.size())];
    if (gate_param_count(k) == 1) {
      const double angle = static_cast<double>(1 + draw_below(rng, 7)) * std::numbers::pi / 4;
      c.add(k, {q}, {angle});
    } else {
      c.add(k, {q});
    }
  };

  for (int layer = 0; layer < depth; ++layer) {
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[draw_below(rng, i)]);
    }
    std::size_t i = 0;
    for (; i + 1 < order.size(); i += 2) {
      if (draw_below(rng, 2) == 0) {
        const GateKind k = draw_below(rng, 2) == 0 ? GateKind::CX : GateKind::CZ;
        c.add(k, {order[i], order[i + 1]});
      } else {
        single(order[i]);
        single(order[i + 1]);
      }
    }
    if (i < order.size()) single(order[i]);
  }
  return c;
}

Circuit generate(BenchmarkKind kind, int n, const GeneratorOptions& options) {
  if (n < 1) throw CircuitError("qubit count must be at least 1");
  switch (kind) {
    case BenchmarkKind::BV:
      if (options.depth) throw CircuitError("bv does not take a depth");
      return make_bv(n, options.secret);
    case BenchmarkKind::GHZ:
      if (options.secret || options.depth) throw CircuitError("ghz takes no secret or depth");
      return make_ghz(n);
    case BenchmarkKind::QFT:
      if (options.secret || options.depth) throw CircuitError("qft takes no secret or depth");
      return make_qft(n);
    case BenchmarkKind::Random:
      if (options.secret) throw CircuitError("random does not take a secret");
      if (!options.depth || !options.seed) throw CircuitError("random requires depth and seed");
      return make_random(n, *options.depth, *options.seed);
  }
  throw CircuitError("unknown benchmark kind");
}

}  // namespace hqc
