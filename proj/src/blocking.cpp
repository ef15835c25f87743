#include "qcut/blocking.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <numeric>

namespace qcut {

namespace {

class Placement {
 public:
  Placement(int n, int nc) : nc_(nc), log_to_phys_(n), phys_to_log_(n), last_use_(n, 0) {}

  void place(int logical, int physical) {
    log_to_phys_[logical] = physical;
    phys_to_log_[physical] = logical;
  }

  int phys(int logical) const { return log_to_phys_[logical]; }
  bool is_local(int logical) const { return phys(logical) < nc_; }

  bool all_local(const Gate& g) const {
    for (int k = 0; k < g.arity(); ++k)
      if (!is_local(g.qubits[k])) return false;
    return true;
  }

  Gate to_physical(const Gate& g) const {
    Gate out = g;
    for (int k = 0; k < g.arity(); ++k) out.qubits[k] = phys(g.qubits[k]);
    return out;
  }

  void touch(const Gate& physical_gate) {
    ++clock_;
    for (int k = 0; k < physical_gate.arity(); ++k) last_use_[physical_gate.qubits[k]] = clock_;
  }

  // Least-recently-used local slot not holding one of `keep`; ties go to the
  // lowest index.
  int victim(const Gate& keep) const {
    int best = -1;
    for (int slot = 0; slot < nc_; ++slot) {
      if (keep.touches(phys_to_log_[slot])) continue;
      if (best < 0 || last_use_[slot] < last_use_[best]) best = slot;
    }
    return best;
  }

  // Exchanges the contents of two physical slots.
  void swap_slots(int a, int b) {
    const int la = phys_to_log_[a], lb = phys_to_log_[b];
    place(la, b);
    place(lb, a);
  }

  const std::vector<int>& final_perm() const { return log_to_phys_; }

 private:
  int nc_;
  std::vector<int> log_to_phys_;
  std::vector<int> phys_to_log_;
  std::vector<long> last_use_;
  long clock_ = 0;
};

}  // namespace

BlockedCircuit blocking_transpile(const Circuit& c, int nc) {
  const int n = c.width();
  if (nc < 1 || nc > n)
    throw CircuitError("chunk qubits " + std::to_string(nc) + " outside [1, " + std::to_string(n) + "]");

  BlockedCircuit out;
  if (nc == n) {
    out.circuit = c;
    out.final_perm.resize(n);
    std::iota(out.final_perm.begin(), out.final_perm.end(), 0);
    return out;
  }
  if (nc < 2) {
    for (const Gate& g : c.gates())
      if (g.arity() == 2) throw InfeasibleError("nc=1 cannot host a two-qubit gate locally");
  }

  // Qubit reordering: touched qubits by first use, then untouched ones.
  Placement place(n, nc);
  std::vector<bool> seen(n, false);
  int next = 0;
  for (const Gate& g : c.gates())
    for (int k = 0; k < g.arity(); ++k)
      if (!seen[g.qubits[k]]) {
        seen[g.qubits[k]] = true;
        place.place(g.qubits[k], next++);
      }
  for (int q = 0; q < n; ++q)
    if (!seen[q]) place.place(q, next++);

  Circuit& pc = out.circuit = Circuit(n);
  const auto emit = [&](const Gate& logical) {
    const Gate g = place.to_physical(logical);
    pc.append(g);
    place.touch(g);
  };

  std::list<int> pending(c.size());
  std::iota(pending.begin(), pending.end(), 0);
  std::vector<bool> blocked(n);
  while (!pending.empty()) {
    // Issue every front-layer gate that is already local.
    bool issued = false;
    std::fill(blocked.begin(), blocked.end(), false);
    int blocked_count = 0;
    for (auto it = pending.begin(); it != pending.end() && blocked_count < n;) {
      const Gate& g = c[*it];
      bool free = true;
      for (int k = 0; k < g.arity(); ++k) free = free && !blocked[g.qubits[k]];
      if (free && place.all_local(g)) {
        emit(g);
        it = pending.erase(it);
        issued = true;
        continue;
      }
      for (int k = 0; k < g.arity(); ++k)
        if (!blocked[g.qubits[k]]) {
          blocked[g.qubits[k]] = true;
          ++blocked_count;
        }
      ++it;
    }
    if (issued) continue;

    // Earliest pending gate is always in the front layer; relocate its operands.
    const Gate& g = c[pending.front()];
    for (int k = 0; k < g.arity(); ++k) {
      const int logical = g.qubits[k];
      if (place.is_local(logical)) continue;
      const int remote = place.phys(logical);
      const int slot = place.victim(g);
      const Gate sw = make_gate(GateKind::SWAP, slot, remote);
      pc.append(sw);
      place.touch(sw);
      place.swap_slots(slot, remote);
      ++out.swaps_inserted;
    }
    emit(g);
    pending.pop_front();
  }
  out.final_perm = place.final_perm();
  return out;
}

double estimate_memory_gb(int n) {
  if (n < 1) throw CircuitError("memory estimate needs n >= 1");
  return std::ldexp(16.0, n) / 1e9;
}

}  // namespace qcut
