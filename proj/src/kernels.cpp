#include "qcut/kernels.hpp"

#include <algorithm>

namespace qcut::kernels {

namespace {

// Plain real arithmetic: std::complex products take a NaN-recovery path that
// blocks vectorization, and the matrix entries are hoisted out of the loop so
// stores into the state cannot alias them.
struct C {
  double re, im;
};

inline C mul(C a, C b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline C add(C a, C b) { return {a.re + b.re, a.im + b.im}; }

struct M2 {
  C m[4];
  explicit M2(const GateMatrix& u) {
    for (int i = 0; i < 4; ++i) m[i] = {u.m[i].real(), u.m[i].imag()};
  }
};

struct M4 {
  C m[16];
  explicit M4(const GateMatrix& u) {
    for (int i = 0; i < 16; ++i) m[i] = {u.m[i].real(), u.m[i].imag()};
  }
};

inline C load(const cplx* a, index_t i) { return {a[i].real(), a[i].imag()}; }
inline void store(cplx* a, index_t i, C v) { a[i] = {v.re, v.im}; }

inline void update_pair(cplx* a, index_t i0, index_t i1, const M2& u) {
  const C x0 = load(a, i0), x1 = load(a, i1);
  store(a, i0, add(mul(u.m[0], x0), mul(u.m[1], x1)));
  store(a, i1, add(mul(u.m[2], x0), mul(u.m[3], x1)));
}

inline void update_quad(cplx* a, const index_t idx[4], const M4& u) {
  const C x[4] = {load(a, idx[0]), load(a, idx[1]), load(a, idx[2]), load(a, idx[3])};
  for (int r = 0; r < 4; ++r) {
    const C* row = u.m + 4 * r;
    store(a, idx[r], add(add(mul(row[0], x[0]), mul(row[1], x[1])), add(mul(row[2], x[2]), mul(row[3], x[3]))));
  }
}

inline void quad_indices(index_t k, int lo, int hi, index_t m0, index_t m1, index_t idx[4]) {
  const index_t base = insert_zero(insert_zero(k, lo), hi);
  idx[0] = base;
  idx[1] = base | m0;
  idx[2] = base | m1;
  idx[3] = base | m0 | m1;
}

}  // namespace

namespace serial {

void apply_1q(std::span<cplx> amps, int q, const GateMatrix& gate) {
  const M2 u(gate);
  const index_t half = amps.size() / 2, mask = index_t{1} << q;
  cplx* a = amps.data();
  for (index_t k = 0; k < half; ++k) {
    const index_t i0 = insert_zero(k, q);
    update_pair(a, i0, i0 | mask, u);
  }
}

void apply_2q(std::span<cplx> amps, int q0, int q1, const GateMatrix& gate) {
  const M4 u(gate);
  const index_t quarter = amps.size() / 4;
  const index_t m0 = index_t{1} << q0, m1 = index_t{1} << q1;
  const int lo = std::min(q0, q1), hi = std::max(q0, q1);
  cplx* a = amps.data();
  index_t idx[4];
  for (index_t k = 0; k < quarter; ++k) {
    quad_indices(k, lo, hi, m0, m1, idx);
    update_quad(a, idx, u);
  }
}

void apply_gate(std::span<cplx> amps, const Gate& g) {
  const GateMatrix u = gate_unitary(g);
  if (g.arity() == 1)
    apply_1q(amps, g.qubits[0], u);
  else
    apply_2q(amps, g.qubits[0], g.qubits[1], u);
}

void probabilities(std::span<const cplx> amps, std::span<double> out) {
  for (index_t k = 0; k < amps.size(); ++k) out[k] = std::norm(amps[k]);
}

}  // namespace serial

namespace omp {

void apply_1q(std::span<cplx> amps, int q, const GateMatrix& gate) {
  const M2 u(gate);
  const index_t half = amps.size() / 2, mask = index_t{1} << q;
  cplx* a = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (index_t k = 0; k < half; ++k) {
    const index_t i0 = insert_zero(k, q);
    update_pair(a, i0, i0 | mask, u);
  }
}

void apply_2q(std::span<cplx> amps, int q0, int q1, const GateMatrix& gate) {
  const M4 u(gate);
  const index_t quarter = amps.size() / 4;
  const index_t m0 = index_t{1} << q0, m1 = index_t{1} << q1;
  const int lo = std::min(q0, q1), hi = std::max(q0, q1);
  cplx* a = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (index_t k = 0; k < quarter; ++k) {
    index_t idx[4];
    quad_indices(k, lo, hi, m0, m1, idx);
    update_quad(a, idx, u);
  }
}

void apply_gate(std::span<cplx> amps, const Gate& g) {
  const GateMatrix u = gate_unitary(g);
  if (g.arity() == 1)
    apply_1q(amps, g.qubits[0], u);
  else
    apply_2q(amps, g.qubits[0], g.qubits[1], u);
}

void probabilities(std::span<const cplx> amps, std::span<double> out) {
  const index_t n = amps.size();
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (index_t k = 0; k < n; ++k) out[k] = std::norm(amps[k]);
}

}  // namespace omp

}  // namespace qcut::kernels
