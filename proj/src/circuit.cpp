#include "qcut/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qcut {

namespace {

struct GateInfo {
  GateKind kind;
  std::string_view name;
  int arity;
  int params;
};

constexpr std::array<GateInfo, 16> kGateTable{{
    {GateKind::H, "h", 1, 0},     {GateKind::X, "x", 1, 0},
    {GateKind::Y, "y", 1, 0},     {GateKind::Z, "z", 1, 0},
    {GateKind::S, "s", 1, 0},     {GateKind::Sdg, "sdg", 1, 0},
    {GateKind::T, "t", 1, 0},     {GateKind::Tdg, "tdg", 1, 0},
    {GateKind::RX, "rx", 1, 1},   {GateKind::RY, "ry", 1, 1},
    {GateKind::RZ, "rz", 1, 1},   {GateKind::U1, "u1", 1, 1},
    {GateKind::U3, "u3", 1, 3},   {GateKind::CX, "cx", 2, 0},
    {GateKind::CZ, "cz", 2, 0},   {GateKind::SWAP, "swap", 2, 0},
}};

const GateInfo& info(GateKind k) { return kGateTable[static_cast<std::size_t>(k)]; }

GateMatrix one_qubit(cplx a, cplx b, cplx c, cplx d) {
  GateMatrix g;
  g.dim = 2;
  g(0, 0) = a;
  g(0, 1) = b;
  g(1, 0) = c;
  g(1, 1) = d;
  return g;
}

GateMatrix two_qubit_permutation(std::array<int, 4> target_of) {
  GateMatrix g;
  g.dim = 4;
  for (int col = 0; col < 4; ++col) g(target_of[static_cast<std::size_t>(col)], col) = 1.0;
  return g;
}

}  // namespace

int arity(GateKind k) { return info(k).arity; }
int param_count(GateKind k) { return info(k).params; }
std::string_view gate_name(GateKind k) { return info(k).name; }

bool gate_from_name(std::string_view name, GateKind& out) {
  for (const auto& gi : kGateTable) {
    if (gi.name == name) {
      out = gi.kind;
      return true;
    }
  }
  return false;
}

Gate make_gate(GateKind k, int q0, int q1, std::array<double, 3> params) {
  Gate g;
  g.kind = k;
  g.qubits = {q0, arity(k) == 2 ? q1 : -1};
  for (int i = param_count(k); i < 3; ++i) params[static_cast<std::size_t>(i)] = 0.0;
  g.params = params;
  return g;
}

GateMatrix gate_unitary(const Gate& g) {
  using std::numbers::sqrt2;
  const cplx i{0.0, 1.0};
  const double r = 1.0 / sqrt2;
  const auto& p = g.params;
  switch (g.kind) {
    case GateKind::H: return one_qubit(r, r, r, -r);
    case GateKind::X: return one_qubit(0, 1, 1, 0);
    case GateKind::Y: return one_qubit(0, -i, i, 0);
    case GateKind::Z: return one_qubit(1, 0, 0, -1);
    case GateKind::S: return one_qubit(1, 0, 0, i);
    case GateKind::Sdg: return one_qubit(1, 0, 0, -i);
    case GateKind::T: return one_qubit(1, 0, 0, std::polar(1.0, std::numbers::pi / 4));
    case GateKind::Tdg: return one_qubit(1, 0, 0, std::polar(1.0, -std::numbers::pi / 4));
    case GateKind::RX: {
      const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
      return one_qubit(c, -i * s, -i * s, c);
    }
    case GateKind::RY: {
      const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
      return one_qubit(c, -s, s, c);
    }
    case GateKind::RZ:
      return one_qubit(std::polar(1.0, -p[0] / 2), 0, 0, std::polar(1.0, p[0] / 2));
    case GateKind::U1: return one_qubit(1, 0, 0, std::polar(1.0, p[0]));
    case GateKind::U3: {
      const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
      return one_qubit(c, -std::polar(s, p[2]), std::polar(s, p[1]), std::polar(c, p[1] + p[2]));
    }
    // local index = b0 | b1 << 1 with b0 the first operand
    case GateKind::CX: return two_qubit_permutation({0, 3, 2, 1});
    case GateKind::SWAP: return two_qubit_permutation({0, 2, 1, 3});
    case GateKind::CZ: {
      GateMatrix m = two_qubit_permutation({0, 1, 2, 3});
      m(3, 3) = -1.0;
      return m;
    }
  }
  throw CircuitError("unknown gate kind");
}

Circuit& Circuit::append(const Gate& g) {
  const auto check = [&](int q) {
    if (q < 0 || q >= width_)
      throw CircuitError("qubit index " + std::to_string(q) + " out of range for width " +
                         std::to_string(width_));
  };
  check(g.qubits[0]);
  if (g.arity() == 2) {
    check(g.qubits[1]);
    if (g.qubits[0] == g.qubits[1])
      throw CircuitError("duplicate qubit operands for " + std::string(gate_name(g.kind)));
  }
  gates_.push_back(g);
  return *this;
}

Circuit& Circuit::prepend(const Gate& g) {
  append(g);
  std::rotate(gates_.rbegin(), gates_.rbegin() + 1, gates_.rend());
  return *this;
}

std::vector<DagEdge> dag_edges(const Circuit& c) {
  std::vector<std::vector<int>> on_wire(static_cast<std::size_t>(c.width()));
  for (std::size_t gi = 0; gi < c.size(); ++gi) {
    const Gate& g = c[gi];
    for (int k = 0; k < g.arity(); ++k)
      on_wire[static_cast<std::size_t>(g.qubits[static_cast<std::size_t>(k)])].push_back(
          static_cast<int>(gi));
  }
  std::vector<DagEdge> edges;
  for (int w = 0; w < c.width(); ++w) {
    const auto& seq = on_wire[static_cast<std::size_t>(w)];
    for (std::size_t k = 1; k < seq.size(); ++k) edges.push_back({seq[k - 1], seq[k], w});
  }
  return edges;
}

std::vector<int> gates_per_wire(const Circuit& c) {
  std::vector<int> count(static_cast<std::size_t>(c.width()), 0);
  for (const Gate& g : c.gates())
    for (int k = 0; k < g.arity(); ++k) ++count[static_cast<std::size_t>(g.qubits[static_cast<std::size_t>(k)])];
  return count;
}

}  // namespace qcut
