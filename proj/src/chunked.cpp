#include <algorithm>
#include <span>
#include <stdexcept>

#include "json.hpp"

#include "qcut/blocking.hpp"
#include "qcut/kernels.hpp"

namespace qcut {

namespace {

using kernels::index_t;

bool is_local(const Gate& g, int nc) {
  for (int k = 0; k < g.arity(); ++k)
    if (g.qubits[k] >= nc) return false;
  return true;
}

// Statevector split into equal chunks owned by memory spaces, each with one
// receive buffer the size of a chunk.
class ChunkedState {
 public:
  explicit ChunkedState(const ChunkLayout& layout)
      : layout_(layout),
        amps_(index_t{1} << layout.n, cplx{0.0, 0.0}),
        buffers_(static_cast<std::size_t>(layout.num_spaces) * layout.chunk_amps()),
        transfers_(static_cast<std::size_t>(layout.num_spaces), 0) {
    amps_[0] = 1.0;
  }

  std::span<cplx> chunk(index_t c) {
    return {amps_.data() + c * layout_.chunk_amps(), layout_.chunk_amps()};
  }
  std::span<cplx> buffer(int space) {
    return {buffers_.data() + static_cast<index_t>(space) * layout_.chunk_amps(), layout_.chunk_amps()};
  }

  // Applies a run of chunk-local gates; each chunk sees the whole batch before
  // the next chunk is touched.
  void apply_local_batch(std::span<const Gate> batch) {
    std::vector<GateMatrix> mats;
    mats.reserve(batch.size());
    for (const Gate& g : batch) mats.push_back(gate_unitary(g));
    const auto chunks = static_cast<std::int64_t>(layout_.chunk_count());
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
      auto local = chunk(static_cast<index_t>(c));
      for (std::size_t i = 0; i < batch.size(); ++i) {
        const Gate& g = batch[i];
        if (g.arity() == 1)
          kernels::serial::apply_1q(local, g.qubits[0], mats[i]);
        else
          kernels::serial::apply_2q(local, g.qubits[0], g.qubits[1], mats[i]);
      }
    }
  }

  // SWAP between local qubit `low` and chunk-index qubit `high`: the half of
  // chunk c0 with bit `low` set trades places with the half of its partner
  // c1 = c0 | bit with `low` clear.
  void swap_across_chunks(int low, int high) {
    const int j = high - layout_.nc;
    const index_t jmask = index_t{1} << j;
    const index_t lmask = index_t{1} << low;
    const index_t cps = layout_.chunks_per_space();
    const index_t half = layout_.chunk_amps() / 2;

    if (jmask < cps) {
      // Partner chunk lives in the same space.
      const auto pairs = static_cast<std::int64_t>(layout_.chunk_count() / 2);
#pragma omp parallel for schedule(static)
      for (std::int64_t k = 0; k < pairs; ++k) {
        const index_t c0 = kernels::insert_zero(static_cast<index_t>(k), j);
        auto a = chunk(c0);
        auto b = chunk(c0 | jmask);
        for (index_t i = 0; i < half; ++i) {
          const index_t i0 = kernels::insert_zero(i, low);
          std::swap(a[i0 | lmask], b[i0]);
        }
      }
      return;
    }

    // Pipelined exchange: in round r every space pulls its partner's r-th chunk
    // into its buffer, then all spaces update their own r-th chunk.
    const int spaces = layout_.num_spaces;
    for (index_t r = 0; r < cps; ++r) {
#pragma omp parallel for schedule(static)
      for (int s = 0; s < spaces; ++s) {
        const index_t own = static_cast<index_t>(s) * cps + r;
        const auto src = chunk(own ^ jmask);
        std::copy(src.begin(), src.end(), buffer(s).begin());
        ++transfers_[static_cast<std::size_t>(s)];
      }
#pragma omp parallel for schedule(static)
      for (int s = 0; s < spaces; ++s) {
        const index_t own = static_cast<index_t>(s) * cps + r;
        auto dst = chunk(own);
        const auto buf = buffer(s);
        const bool upper = (own & jmask) != 0;
        for (index_t i = 0; i < half; ++i) {
          const index_t i0 = kernels::insert_zero(i, low);
          if (upper)
            dst[i0] = buf[i0 | lmask];
          else
            dst[i0 | lmask] = buf[i0];
        }
      }
    }
  }

  std::uint64_t transfers() const {
    std::uint64_t total = 0;
    for (auto t : transfers_) total += t;
    return total;
  }

  const std::vector<cplx>& amplitudes() const { return amps_; }

 private:
  ChunkLayout layout_;
  std::vector<cplx> amps_;
  std::vector<cplx> buffers_;
  std::vector<std::uint64_t> transfers_;
};

}  // namespace

ChunkedResult chunked_simulate(const Circuit& c, int nc, int num_spaces) {
  BlockedCircuit blocked = blocking_transpile(c, nc);

  ChunkLayout layout;
  layout.n = c.width();
  layout.nc = nc;
  layout.num_spaces = num_spaces;
  layout.perm = blocked.final_perm;
  const index_t chunks = layout.chunk_count();
  if (num_spaces < 1 || (num_spaces & (num_spaces - 1)) != 0 ||
      static_cast<index_t>(num_spaces) > chunks)
    throw CircuitError("num_spaces must be a power of two dividing the chunk count " +
                       std::to_string(chunks));

  ChunkedState state(layout);
  const auto& gates = blocked.circuit.gates();
  std::size_t i = 0;
  while (i < gates.size()) {
    std::size_t j = i;
    while (j < gates.size() && is_local(gates[j], nc)) ++j;
    if (j > i) {
      state.apply_local_batch(std::span<const Gate>(gates.data() + i, j - i));
      i = j;
      continue;
    }
    const Gate& g = gates[i];
    if (g.kind != GateKind::SWAP)
      throw std::logic_error("non-local gate survived cache blocking");
    const int lo = std::min(g.qubits[0], g.qubits[1]);
    const int hi = std::max(g.qubits[0], g.qubits[1]);
    if (lo >= nc) throw std::logic_error("swap between two chunk-index qubits");
    state.swap_across_chunks(lo, hi);
    ++i;
  }

  ChunkedResult result;
  result.layout = layout;
  result.log.nc = nc;
  result.log.num_spaces = num_spaces;
  result.log.swaps_inserted = blocked.swaps_inserted;
  result.log.chunk_transfers = state.transfers();
  result.log.bytes_moved = result.log.chunk_transfers * layout.chunk_amps() * sizeof(cplx);
  result.peak_bytes_per_space = (layout.chunks_per_space() + 1) * layout.chunk_amps() * sizeof(cplx);

  // Read in physical order, scatter to logical order.
  const auto& amps = state.amplitudes();
  const int n = layout.n;
  result.probs.m = n;
  result.probs.p.assign(amps.size(), 0.0);
  const auto total = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t phys = 0; phys < total; ++phys) {
    index_t logical = 0;
    for (int l = 0; l < n; ++l)
      logical |= ((static_cast<index_t>(phys) >> layout.perm[l]) & 1u) << l;
    result.probs.p[logical] = std::norm(amps[static_cast<index_t>(phys)]);
  }
  return result;
}

std::string exchange_log_json(const ExchangeLog& log) {
  nlohmann::ordered_json j;
  j["nc"] = log.nc;
  j["num_spaces"] = log.num_spaces;
  j["chunk_transfers"] = log.chunk_transfers;
  j["bytes_moved"] = log.bytes_moved;
  j["swaps_inserted"] = log.swaps_inserted;
  return j.dump();
}

}  // namespace qcut
