#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcut {

using cplx = std::complex<double>;

enum class GateKind {
  H, X, Y, Z, S, Sdg, T, Tdg,
  RX, RY, RZ, U1, U3,
  CX, CZ, SWAP,
};

int arity(GateKind k);
int param_count(GateKind k);
std::string_view gate_name(GateKind k);
// Returns false if the lowercase name is not part of the gate set.
bool gate_from_name(std::string_view name, GateKind& out);

struct Gate {
  GateKind kind = GateKind::H;
  std::array<double, 3> params{};
  std::array<int, 2> qubits{0, -1};

  int arity() const { return qcut::arity(kind); }
  bool touches(int q) const {
    return qubits[0] == q || (arity() == 2 && qubits[1] == q);
  }
  friend bool operator==(const Gate&, const Gate&) = default;
};

Gate make_gate(GateKind k, int q0, int q1 = -1, std::array<double, 3> params = {});

/// Dense unitary of a gate in its local basis.
///
/// For two-qubit gates the local index is bit(qubits[0]) | bit(qubits[1]) << 1,
/// i.e. the first operand is the low bit. CX uses qubits[0] as control.
struct GateMatrix {
  int dim = 2;
  std::array<cplx, 16> m{};

  cplx operator()(int r, int c) const { return m[static_cast<std::size_t>(r * dim + c)]; }
  cplx& operator()(int r, int c) { return m[static_cast<std::size_t>(r * dim + c)]; }
};

GateMatrix gate_unitary(const Gate& g);

class CircuitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No layout or partition satisfies the requested constraints.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered gate list over `width` wires. Qubit 0 is the least-significant bit
/// of a basis-state index.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int width) : width_(width) {
    if (width < 0) throw CircuitError("negative circuit width");
  }

  int width() const { return width_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }

  /// Validates operands; throws CircuitError on out-of-range or duplicate qubits.
  Circuit& append(const Gate& g);
  Circuit& append(GateKind k, int q0, int q1 = -1, std::array<double, 3> params = {}) {
    return append(make_gate(k, q0, q1, params));
  }
  Circuit& prepend(const Gate& g);

  // Convenience builders used by generators and tests.
  Circuit& h(int q) { return append(GateKind::H, q); }
  Circuit& x(int q) { return append(GateKind::X, q); }
  Circuit& cx(int c, int t) { return append(GateKind::CX, c, t); }
  Circuit& cz(int a, int b) { return append(GateKind::CZ, a, b); }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int width_ = 0;
  std::vector<Gate> gates_;
};

/// Edge of the circuit DAG: consecutive operations on one wire.
struct DagEdge {
  int from_gate = 0;
  int to_gate = 0;
  int wire = 0;
  friend auto operator<=>(const DagEdge&, const DagEdge&) = default;
};

/// One edge per consecutive gate pair per wire, ordered by (wire, from_gate).
std::vector<DagEdge> dag_edges(const Circuit& c);

/// Number of gates touching each wire.
std::vector<int> gates_per_wire(const Circuit& c);

}  // namespace qcut
