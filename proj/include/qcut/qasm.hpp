#pragma once

#include <string>
#include <string_view>

#include "qcut/circuit.hpp"

namespace qcut {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses the QASM-like subset:
///
///   qubits N;
///   h q[0];
///   rz(pi/4) q[1];
///   cx q[0],q[1];   // comment
///
/// Parameters accept numeric literals, `pi`, unary minus and + - * / with
/// parentheses.
Circuit parse_circuit(std::string_view text);

/// Canonical text form; parameters are printed with 17 significant digits so
/// that parse_circuit(serialize_circuit(c)) == c.
std::string serialize_circuit(const Circuit& c);

}  // namespace qcut
