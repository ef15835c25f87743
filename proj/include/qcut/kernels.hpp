#pragma once

#include <cstdint>
#include <span>

#include "qcut/circuit.hpp"

// Amplitude-update kernels. `serial` is the reference implementation kept for
// testing; `omp` splits the same index space across threads with a static
// schedule, so every amplitude is written by exactly one iteration and the
// result is bitwise identical to the serial kernel.
namespace qcut::kernels {

using index_t = std::uint64_t;

/// Inserts a zero bit at position `bit` of `k`.
constexpr index_t insert_zero(index_t k, int bit) {
  const index_t low = k & ((index_t{1} << bit) - 1);
  return ((k >> bit) << (bit + 1)) | low;
}

namespace serial {
void apply_1q(std::span<cplx> amps, int q, const GateMatrix& u);
void apply_2q(std::span<cplx> amps, int q0, int q1, const GateMatrix& u);
void apply_gate(std::span<cplx> amps, const Gate& g);
void probabilities(std::span<const cplx> amps, std::span<double> out);
}  // namespace serial

namespace omp {
void apply_1q(std::span<cplx> amps, int q, const GateMatrix& u);
void apply_2q(std::span<cplx> amps, int q0, int q1, const GateMatrix& u);
void apply_gate(std::span<cplx> amps, const Gate& g);
void probabilities(std::span<const cplx> amps, std::span<double> out);
}  // namespace omp

// Below this many amplitudes the omp kernels run on the calling thread.
inline constexpr index_t kParallelThreshold = index_t{1} << 14;

}  // namespace qcut::kernels
