#include "hqc/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <vector>

namespace hqc {

QasmError::QasmError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

UnsupportedGateError::UnsupportedGateError(const std::string& gate, int line, int column)
    : QasmError("unsupported gate '" + gate + "'", line, column), gate_(gate) {}

namespace {

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          t.text += advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        t.kind = Tok::Number;
        while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
          t.text += advance();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
          t.text += advance();
          if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) t.text += advance();
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += advance();
        }
      } else if (c == '"') {
        t.kind = Tok::String;
        advance();
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') t.text += advance();
        if (pos_ >= src_.size() || src_[pos_] != '"') throw QasmError("unterminated string", t.line, t.col);
        advance();
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        t.kind = Tok::Symbol;
        t.text = "->";
        advance();
        advance();
      } else if (std::string_view(";,[]()+-*/^{}").find(c) != std::string_view::npos) {
        t.kind = Tok::Symbol;
        t.text = std::string(1, advance());
      } else {
        throw QasmError(std::string("unexpected character '") + c + "'", t.line, t.col);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Circuit run() {
    if (peek_ident("OPENQASM")) {
      next();
      const Token& v = expect(Tok::Number, "version number");
      if (v.text != "2.0" && v.text != "2") throw QasmError("only OPENQASM 2.0 is supported", v.line, v.col);
      expect_symbol(";");
    }
    while (peek().kind != Tok::End) statement();
    if (!qreg_) {
      const Token& t = peek();
      throw QasmError("missing qreg declaration", t.line, t.col);
    }
    if (!measured_.empty() || measure_whole_) {
      if (!measure_whole_ && measured_.size() != static_cast<std::size_t>(circuit_.num_qubits())) {
        throw QasmError("only a full-register trailing measurement is supported", measure_line_, measure_col_);
      }
      circuit_.set_measure_all(true);
    }
    return std::move(circuit_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  bool peek_ident(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }
  bool peek_symbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }

  const Token& expect(Tok kind, std::string_view what) {
    const Token& t = peek();
    if (t.kind != kind) throw QasmError("expected " + std::string(what), t.line, t.col);
    return next();
  }

  void expect_symbol(std::string_view s) {
    const Token& t = peek();
    if (!(t.kind == Tok::Symbol && t.text == s)) {
      throw QasmError("expected '" + std::string(s) + "'", t.line, t.col);
    }
    next();
  }

  long parse_index() {
    const Token& t = expect(Tok::Number, "integer index");
    long v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size() || v < 0) {
      throw QasmError("invalid integer '" + t.text + "'", t.line, t.col);
    }
    return v;
  }

  void statement() {
    const Token& head = peek();
    if (head.kind != Tok::Ident) throw QasmError("expected statement", head.line, head.col);
    const std::string& kw = head.text;
    if (kw == "include") {
      next();
      const Token& f = expect(Tok::String, "include file name");
      if (f.text != "qelib1.inc") throw QasmError("only qelib1.inc may be included", f.line, f.col);
      expect_symbol(";");
    } else if (kw == "qreg") {
      next();
      if (qreg_) throw QasmError("multiple qreg declarations are not supported", head.line, head.col);
      qreg_name_ = expect(Tok::Ident, "register name").text;
      expect_symbol("[");
      const long n = parse_index();
      expect_symbol("]");
      expect_symbol(";");
      circuit_ = Circuit(static_cast<int>(n));
      qreg_ = true;
    } else if (kw == "creg") {
      next();
      cregs_.insert(expect(Tok::Ident, "register name").text);
      expect_symbol("[");
      parse_index();
      expect_symbol("]");
      expect_symbol(";");
    } else if (kw == "barrier") {
      next();
      require_qreg(head);
      operand_list(/*allow_whole=*/true);
      expect_symbol(";");
    } else if (kw == "measure") {
      next();
      require_qreg(head);
      measurement(head);
    } else if (kw == "gate" || kw == "opaque" || kw == "if" || kw == "reset") {
      throw QasmError("'" + kw + "' statements are not supported", head.line, head.col);
    } else {
      gate_statement();
    }
  }

  void require_qreg(const Token& at) {
    if (!qreg_) throw QasmError("statement before qreg declaration", at.line, at.col);
  }

  void measurement(const Token& head) {
    if (measure_line_ == 0) {
      measure_line_ = head.line;
      measure_col_ = head.col;
    }
    const Token& reg = expect(Tok::Ident, "register name");
    if (reg.text != qreg_name_) throw QasmError("unknown quantum register '" + reg.text + "'", reg.line, reg.col);
    std::optional<long> qi;
    if (peek_symbol("[")) {
      next();
      qi = parse_index();
      expect_symbol("]");
    }
    expect_symbol("->");
    const Token& creg = expect(Tok::Ident, "classical register");
    if (!cregs_.count(creg.text)) {
      throw QasmError("unknown classical register '" + creg.text + "'", creg.line, creg.col);
    }
    if (peek_symbol("[")) {
      next();
      parse_index();
      expect_symbol("]");
    }
    expect_symbol(";");
    if (qi) {
      if (*qi >= circuit_.num_qubits()) throw QasmError("qubit index out of range", reg.line, reg.col);
      if (!measured_.insert(static_cast<int>(*qi)).second) {
        throw QasmError("qubit measured twice", reg.line, reg.col);
      }
    } else {
      measure_whole_ = true;
    }
  }

  std::vector<int> operand_list(bool allow_whole) {
    std::vector<int> qs;
    for (;;) {
      const Token& reg = expect(Tok::Ident, "qubit operand");
      if (reg.text != qreg_name_) throw QasmError("unknown quantum register '" + reg.text + "'", reg.line, reg.col);
      if (peek_symbol("[")) {
        next();
        const long idx = parse_index();
        expect_symbol("]");
        if (idx >= circuit_.num_qubits()) {
          throw QasmError("qubit index " + std::to_string(idx) + " out of range", reg.line, reg.col);
        }
        qs.push_back(static_cast<int>(idx));
      } else if (!allow_whole) {
        throw QasmError("register broadcast is not supported for gates", reg.line, reg.col);
      }
      if (!peek_symbol(",")) break;
      next();
    }
    return qs;
  }

  void gate_statement() {
    const Token& name = next();
    require_qreg(name);
    const auto kind = gate_from_name(name.text);
    if (!kind) throw UnsupportedGateError(name.text, name.line, name.col);
    if (measure_line_ != 0) {
      throw QasmError("gates after measurement are not supported", name.line, name.col);
    }
    std::vector<double> params;
    if (peek_symbol("(")) {
      next();
      if (!peek_symbol(")")) {
        params.push_back(expr());
        while (peek_symbol(",")) {
          next();
          params.push_back(expr());
        }
      }
      expect_symbol(")");
    }
    auto qs = operand_list(/*allow_whole=*/false);
    expect_symbol(";");
    try {
      circuit_.add(*kind, std::move(qs), std::move(params));
    } catch (const CircuitError& e) {
      throw QasmError(e.what(), name.line, name.col);
    }
  }

  double expr() {
    double v = term();
    while (peek_symbol("+") || peek_symbol("-")) {
      const bool plus = next().text == "+";
      const double r = term();
      v = plus ? v + r : v - r;
    }
    return v;
  }

  double term() {
    double v = factor();
    while (peek_symbol("*") || peek_symbol("/")) {
      const bool mul = next().text == "*";
      const double r = factor();
      v = mul ? v * r : v / r;
    }
    return v;
  }

  double factor() {
    if (peek_symbol("-")) {
      next();
      return -factor();
    }
    if (peek_symbol("+")) {
      next();
      return factor();
    }
    double base = primary();
    if (peek_symbol("^")) {
      next();
      return std::pow(base, factor());
    }
    return base;
  }

  double primary() {
    const Token& t = next();
    if (t.kind == Tok::Number) {
      double v = 0;
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc() || p != t.text.data() + t.text.size()) {
        throw QasmError("invalid number '" + t.text + "'", t.line, t.col);
      }
      return v;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "pi") return std::numbers::pi;
      using Fn = double (*)(double);
      Fn fn = nullptr;
      if (t.text == "sin") fn = [](double x) { return std::sin(x); };
      if (t.text == "cos") fn = [](double x) { return std::cos(x); };
      if (t.text == "tan") fn = [](double x) { return std::tan(x); };
      if (t.text == "exp") fn = [](double x) { return std::exp(x); };
      if (t.text == "ln") fn = [](double x) { return std::log(x); };
      if (t.text == "sqrt") fn = [](double x) { return std::sqrt(x); };
      if (!fn) throw QasmError("unknown identifier '" + t.text + "' in expression", t.line, t.col);
      expect_symbol("(");
      const double a = expr();
      expect_symbol(")");
      return fn(a);
    }
    if (t.kind == Tok::Symbol && t.text == "(") {
      const double v = expr();
      expect_symbol(")");
      return v;
    }
    throw QasmError("expected expression", t.line, t.col);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Circuit circuit_;
  bool qreg_ = false;
  std::string qreg_name_;
  std::set<std::string> cregs_;
  std::set<int> measured_;
  bool measure_whole_ = false;
  int measure_line_ = 0;
  int measure_col_ = 0;
};

std::string format_angle(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}  // namespace

Circuit parse_qasm(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

std::string emit_qasm(const Circuit& c) {
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(c.num_qubits()) + "];\n";
  if (c.measure_all()) out += "creg c[" + std::to_string(c.num_qubits()) + "];\n";
  for (const auto& g : c.gates()) {
    out += gate_name(g.kind);
    if (!g.params.empty()) {
      out += '(';
      for (std::size_t i = 0; i < g.params.size(); ++i) {
        if (i) out += ',';
        out += format_angle(g.params[i]);
      }
      out += ')';
    }
    out += ' ';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      if (i) out += ',';
      out += "q[" + std::to_string(g.qubits[i]) + "]";
    }
    out += ";\n";
  }
  if (c.measure_all()) out += "measure q -> c;\n";
  return out;
}

}  // namespace hqc
