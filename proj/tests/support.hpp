#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "qcut/blocking.hpp"
#include "qcut/circuit.hpp"
#include "qcut/statevector.hpp"

namespace qcut::test {

class Rand {
 public:
  explicit Rand(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  int below(int bound) { return static_cast<int>(uniform() * bound); }
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

inline Gate random_gate(Rand& r, int n) {
  constexpr GateKind kinds[] = {GateKind::H,  GateKind::X,   GateKind::Y,  GateKind::Z,  GateKind::S,
                                GateKind::Sdg, GateKind::T,  GateKind::Tdg, GateKind::RX, GateKind::RY,
                                GateKind::RZ, GateKind::U1,  GateKind::U3, GateKind::CX, GateKind::CZ,
                                GateKind::SWAP};
  GateKind k;
  do k = kinds[r.below(16)];
  while (n < 2 && arity(k) == 2);
  const int q0 = r.below(n);
  int q1 = -1;
  if (arity(k) == 2) {
    q1 = r.below(n - 1);
    if (q1 >= q0) ++q1;
  }
  std::array<double, 3> p{};
  for (int i = 0; i < param_count(k); ++i) p[i] = (r.uniform() * 2 - 1) * 4;
  return make_gate(k, q0, q1, p);
}

inline Circuit random_circuit(Rand& r, int n, int gates) {
  Circuit c(n);
  for (int i = 0; i < gates; ++i) c.append(random_gate(r, n));
  return c;
}

// Dense 2^n x 2^n matrix-chain simulation, independent of the kernels.
inline std::vector<cplx> dense_simulate(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.width();
  std::vector<cplx> psi(dim, 0.0);
  psi[0] = 1.0;
  for (const Gate& g : c.gates()) {
    const GateMatrix u = gate_unitary(g);
    std::size_t mask = 0;
    for (int k = 0; k < g.arity(); ++k) mask |= std::size_t{1} << g.qubits[k];
    const auto local = [&](std::size_t b) {
      std::size_t l = 0;
      for (int k = 0; k < g.arity(); ++k) l |= ((b >> g.qubits[k]) & 1u) << k;
      return l;
    };
    std::vector<cplx> next(dim, 0.0);
    for (std::size_t row = 0; row < dim; ++row)
      for (std::size_t col = 0; col < dim; ++col)
        if ((row & ~mask) == (col & ~mask)) next[row] += u(local(row), local(col)) * psi[col];
    psi = std::move(next);
  }
  return psi;
}

inline std::vector<double> dense_probabilities(const Circuit& c) {
  std::vector<double> p;
  for (const cplx& a : dense_simulate(c)) p.push_back(std::norm(a));
  return p;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Replays the relocation SWAPs of a blocked circuit against the chunk
// ownership map: every chunk whose partner across the swapped index bit lives
// in another space must receive that partner once.
inline std::uint64_t replay_transfers(const BlockedCircuit& b, int n, int nc, int spaces) {
  const std::uint64_t chunks = std::uint64_t{1} << (n - nc);
  const std::uint64_t per_space = chunks / static_cast<std::uint64_t>(spaces);
  std::uint64_t total = 0;
  for (const Gate& g : b.circuit.gates()) {
    const int hi = std::max(g.qubits[0], g.qubits[1]);
    if (g.kind != GateKind::SWAP || hi < nc) continue;
    for (std::uint64_t c = 0; c < chunks; ++c) {
      const std::uint64_t partner = c ^ (std::uint64_t{1} << (hi - nc));
      if (c / per_space != partner / per_space) ++total;
    }
  }
  return total;
}

// Circuit used for the single-cut walkthrough: five qubits in a CZ chain, cut
// on q2 between cz(1,2) and cz(2,3) when fragments are limited to 3 qubits.
inline Circuit five_qubit_chain() {
  Circuit c(5);
  for (int q = 0; q < 5; ++q) c.h(q);
  c.cz(0, 1);
  c.cz(1, 2);
  c.cz(2, 3);
  c.cz(3, 4);
  c.append(GateKind::RX, 0, -1, {0.7});
  c.append(GateKind::RY, 2, -1, {1.1});
  c.append(GateKind::H, 4);
  return c;
}

}  // namespace qcut::test
