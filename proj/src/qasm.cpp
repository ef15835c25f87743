#include "qcut/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <numbers>

namespace qcut {

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char ch = src_[pos_];
      if (ch == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= src_.size();
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  void expect(char ch) {
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    advance();
  }

  bool accept(char ch) {
    if (peek() != ch) return false;
    advance();
    return true;
  }

  std::string identifier() {
    skip_space();
    std::string out;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      out.push_back(src_[pos_]);
      advance();
    }
    if (out.empty()) fail("expected identifier");
    return out;
  }

  long integer() {
    skip_space();
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    long value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("expected integer");
    advance_by(static_cast<std::size_t>(ptr - first));
    return value;
  }

  double number() {
    skip_space();
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    double value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("expected number");
    advance_by(static_cast<std::size_t>(ptr - first));
    return value;
  }

  int line() const { return line_; }
  int column() const { return col_; }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void advance_by(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
// unary := '-' unary | primary ; primary := number | 'pi' | '(' expr ')'
double parse_expr(Lexer& lx);

double parse_primary(Lexer& lx) {
  const char ch = lx.peek();
  if (ch == '(') {
    lx.expect('(');
    const double v = parse_expr(lx);
    lx.expect(')');
    return v;
  }
  if (std::isalpha(static_cast<unsigned char>(ch))) {
    const int line = lx.line(), col = lx.column();
    const std::string id = lx.identifier();
    if (id != "pi") throw ParseError("unknown constant '" + id + "'", line, col);
    return std::numbers::pi;
  }
  return lx.number();
}

double parse_unary(Lexer& lx) {
  if (lx.accept('-')) return -parse_unary(lx);
  if (lx.accept('+')) return parse_unary(lx);
  return parse_primary(lx);
}

double parse_term(Lexer& lx) {
  double v = parse_unary(lx);
  for (;;) {
    if (lx.accept('*')) {
      v *= parse_unary(lx);
    } else if (lx.accept('/')) {
      v /= parse_unary(lx);
    } else {
      return v;
    }
  }
}

double parse_expr(Lexer& lx) {
  double v = parse_term(lx);
  for (;;) {
    if (lx.accept('+')) {
      v += parse_term(lx);
    } else if (lx.accept('-')) {
      v -= parse_term(lx);
    } else {
      return v;
    }
  }
}

int parse_qubit_ref(Lexer& lx, int width) {
  const int line = lx.line(), col = lx.column();
  if (lx.identifier() != "q") throw ParseError("expected register 'q'", line, col);
  lx.expect('[');
  const int iline = lx.line(), icol = lx.column();
  const long idx = lx.integer();
  lx.expect(']');
  if (idx < 0 || idx >= width)
    throw ParseError("qubit index " + std::to_string(idx) + " out of range", iline, icol);
  return static_cast<int>(idx);
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  Lexer lx(text);
  if (lx.at_end()) lx.fail("missing 'qubits N;' header");
  {
    const int line = lx.line(), col = lx.column();
    if (lx.identifier() != "qubits") throw ParseError("expected 'qubits' header", line, col);
  }
  const long n = lx.integer();
  if (n < 0 || n > 64) lx.fail("invalid qubit count");
  lx.expect(';');
  Circuit c(static_cast<int>(n));

  while (!lx.at_end()) {
    const int line = lx.line(), col = lx.column();
    const std::string name = lx.identifier();
    GateKind kind;
    if (!gate_from_name(name, kind)) throw ParseError("unknown gate '" + name + "'", line, col);

    std::array<double, 3> params{};
    const int want = param_count(kind);
    int got = 0;
    if (lx.accept('(')) {
      if (!lx.accept(')')) {
        do {
          if (got >= 3) lx.fail("too many parameters");
          params[static_cast<std::size_t>(got++)] = parse_expr(lx);
        } while (lx.accept(','));
        lx.expect(')');
      }
    }
    if (got != want)
      throw ParseError(name + " takes " + std::to_string(want) + " parameter(s), got " +
                           std::to_string(got),
                       line, col);

    const int q0 = parse_qubit_ref(lx, c.width());
    int q1 = -1;
    if (arity(kind) == 2) {
      lx.expect(',');
      q1 = parse_qubit_ref(lx, c.width());
      if (q0 == q1) throw ParseError("duplicate qubit operands", line, col);
    }
    lx.expect(';');
    c.append(kind, q0, q1, params);
  }
  return c;
}

std::string serialize_circuit(const Circuit& c) {
  std::string out = "qubits " + std::to_string(c.width()) + ";\n";
  char buf[64];
  for (const Gate& g : c.gates()) {
    out += gate_name(g.kind);
    const int np = param_count(g.kind);
    if (np > 0) {
      out += '(';
      for (int i = 0; i < np; ++i) {
        if (i) out += ',';
        std::snprintf(buf, sizeof buf, "%.17g", g.params[static_cast<std::size_t>(i)]);
        out += buf;
      }
      out += ')';
    }
    out += " q[" + std::to_string(g.qubits[0]) + "]";
    if (g.arity() == 2) out += ",q[" + std::to_string(g.qubits[1]) + "]";
    out += ";\n";
  }
  return out;
}

}  // namespace qcut
