#pragma once

#include <stdexcept>
#include <vector>

#include "qcut/circuit.hpp"

namespace qcut {

struct StateVector {
  int n = 0;
  std::vector<cplx> amps;

  static StateVector zero_state(int n);
  double norm_squared() const;
};

/// Distribution over the computational basis of m qubits. Raw vectors are
/// non-negative and sum to one; attributed or reconstructed ones may carry
/// small signed entries.
struct ProbVector {
  int m = 0;
  std::vector<double> p;

  double sum() const;
  double operator[](std::size_t k) const { return p[k]; }
};

class WidthLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Backend { Serial, OpenMP };

struct SimOptions {
  int max_width = 28;
  Backend backend = Backend::OpenMP;
};

/// Applies every gate of `c` to |0...0>. Throws WidthLimitError when
/// c.width() exceeds options.max_width.
StateVector simulate(const Circuit& c, const SimOptions& options = {});

/// Applies `c` in place to an existing state of matching width.
void run(const Circuit& c, StateVector& state, Backend backend = Backend::OpenMP);

ProbVector probabilities(const StateVector& s, Backend backend = Backend::OpenMP);

enum class MeasureBasis { Comp, X, Y };

/// Appends the rotation that maps a measurement in `basis` onto a
/// computational readout: nothing for Comp, H for X, Sdg then H for Y.
Circuit apply_basis_rotation(const Circuit& c, int qubit, MeasureBasis basis);

}  // namespace qcut
