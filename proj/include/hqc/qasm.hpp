#pragma once

#include <string>
#include <string_view>

#include "hqc/circuit.hpp"

namespace hqc {

/// Parse failure with a 1-based source position.
class QasmError : public std::runtime_error {
 public:
  QasmError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class UnsupportedGateError : public QasmError {
 public:
  UnsupportedGateError(const std::string& gate, int line, int column);
  const std::string& gate() const { return gate_; }

 private:
  std::string gate_;
};

/// Parses the OpenQASM 2.0 subset: optional header and qelib1 include, a
/// single qreg, optional cregs, gates from the supported set, barriers
/// (ignored) and a trailing full-register measurement.
Circuit parse_qasm(std::string_view text);

/// Inverse of parse_qasm. Angles are written with round-trip precision.
std::string emit_qasm(const Circuit& c);

}  // namespace hqc
