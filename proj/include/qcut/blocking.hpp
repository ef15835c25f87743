#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/statevector.hpp"

namespace qcut {

/// Output of the cache-blocking pass. `circuit` acts on physical qubits;
/// `final_perm[l]` is the physical position holding logical qubit l at the end.
struct BlockedCircuit {
  Circuit circuit;
  std::vector<int> final_perm;
  int swaps_inserted = 0;
};

/// Rewrites `c` so that every gate other than a relocation SWAP acts on
/// physical qubits below `nc`.
///
/// Touched qubits are placed low in order of first use and untouched ones high.
/// Gates are issued from the front layer of the dependency DAG, preferring any
/// that are already local; when none is, the earliest pending gate has its
/// remote operands swapped into the least-recently-used local slots.
///
/// Throws InfeasibleError when nc < 2 and the circuit has a two-qubit gate, and
/// CircuitError when nc is outside [1, width].
BlockedCircuit blocking_transpile(const Circuit& c, int nc);

struct ChunkLayout {
  int n = 0;
  int nc = 0;
  int num_spaces = 1;
  std::vector<int> perm;

  std::uint64_t chunk_count() const { return std::uint64_t{1} << (n - nc); }
  std::uint64_t chunks_per_space() const { return chunk_count() / static_cast<std::uint64_t>(num_spaces); }
  std::uint64_t chunk_amps() const { return std::uint64_t{1} << nc; }
  int space_of(std::uint64_t chunk) const { return static_cast<int>(chunk / chunks_per_space()); }
};

struct ExchangeLog {
  int nc = 0;
  int num_spaces = 1;
  std::uint64_t chunk_transfers = 0;
  std::uint64_t bytes_moved = 0;
  int swaps_inserted = 0;
};

std::string exchange_log_json(const ExchangeLog& log);

struct ChunkedResult {
  ProbVector probs;  // logical qubit order
  ExchangeLog log;
  ChunkLayout layout;
  std::uint64_t peak_bytes_per_space = 0;
};

/// Runs `c` on a statevector split into 2^(n-nc) chunks spread over
/// `num_spaces` simulated memory spaces, each owning a contiguous run of chunks
/// plus one chunk-sized receive buffer. Chunk transfers happen only for
/// relocation SWAPs whose high qubit indexes the space.
///
/// num_spaces must be a power of two dividing the chunk count.
ChunkedResult chunked_simulate(const Circuit& c, int nc, int num_spaces);

/// Dense statevector footprint in GB (10^9 bytes) at 16 bytes per amplitude.
double estimate_memory_gb(int n);

}  // namespace qcut
