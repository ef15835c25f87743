#include "qcut/statevector.hpp"

#include <numeric>

#include "qcut/kernels.hpp"

namespace qcut {

StateVector StateVector::zero_state(int n) {
  StateVector s;
  s.n = n;
  s.amps.assign(std::size_t{1} << n, cplx{0.0, 0.0});
  s.amps[0] = 1.0;
  return s;
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const cplx& a : amps) acc += std::norm(a);
  return acc;
}

double ProbVector::sum() const { return std::accumulate(p.begin(), p.end(), 0.0); }

void run(const Circuit& c, StateVector& state, Backend backend) {
  if (c.width() != state.n) throw CircuitError("circuit and state width differ");
  for (const Gate& g : c.gates()) {
    if (backend == Backend::Serial)
      kernels::serial::apply_gate(state.amps, g);
    else
      kernels::omp::apply_gate(state.amps, g);
  }
}

StateVector simulate(const Circuit& c, const SimOptions& options) {
  if (c.width() > options.max_width)
    throw WidthLimitError("circuit width " + std::to_string(c.width()) +
                          " exceeds statevector limit " + std::to_string(options.max_width));
  StateVector s = StateVector::zero_state(c.width());
  run(c, s, options.backend);
  return s;
}

ProbVector probabilities(const StateVector& s, Backend backend) {
  ProbVector out;
  out.m = s.n;
  out.p.resize(s.amps.size());
  if (backend == Backend::Serial)
    kernels::serial::probabilities(s.amps, out.p);
  else
    kernels::omp::probabilities(s.amps, out.p);
  return out;
}

Circuit apply_basis_rotation(const Circuit& c, int qubit, MeasureBasis basis) {
  if (qubit < 0 || qubit >= c.width()) throw CircuitError("basis rotation qubit out of range");
  Circuit out = c;
  switch (basis) {
    case MeasureBasis::Comp:
      break;
    case MeasureBasis::X:
      out.append(GateKind::H, qubit);
      break;
    case MeasureBasis::Y:
      out.append(GateKind::Sdg, qubit);
      out.append(GateKind::H, qubit);
      break;
  }
  return out;
}

}  // namespace qcut
