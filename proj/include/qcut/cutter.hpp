#pragma once

#include <climits>
#include <string>
#include <vector>

#include "qcut/circuit.hpp"

namespace qcut {

struct CutPoint {
  int wire = 0;
  DagEdge edge;
  friend bool operator==(const CutPoint&, const CutPoint&) = default;
};

/// Binds a cut index to the fragment qubit that measures (upstream) or is
/// initialized (downstream) for it.
struct CutRole {
  int cut = 0;
  int qubit = 0;
  friend bool operator==(const CutRole&, const CutRole&) = default;
};

struct SubcircuitSpec {
  Circuit fragment;
  std::vector<CutRole> upstream;    // sorted by cut index
  std::vector<CutRole> downstream;  // sorted by cut index
  std::vector<int> effective_qubits;  // ascending fragment qubits
  std::vector<int> output_map;        // fragment qubit -> original wire, -1 if measured out
  std::vector<int> qubit_wire;        // fragment qubit -> original wire
  std::vector<int> gate_ids;          // fragment gate -> original gate index

  int width() const { return fragment.width(); }
  int effective_count() const { return static_cast<int>(effective_qubits.size()); }
};

struct CutPlan {
  std::vector<CutPoint> cuts;
  std::vector<SubcircuitSpec> subcircuits;
  double objective_cost = 1.0;

  int num_cuts() const { return static_cast<int>(cuts.size()); }
  int max_fragment_width() const;
  int total_width() const;
};

struct CutConstraints {
  int max_width = INT_MAX;
  int max_subcircuits = INT_MAX;
  int max_cuts = 10;
};

/// Splits `c` along `cuts`. Each cut wire becomes a measured qubit in the
/// fragment holding the earlier gate and a freshly initialized qubit in the
/// fragment holding the later one.
///
/// Connected pieces are grouped into at most limits.max_subcircuits fragments
/// by longest-first placement into the narrowest fragment. With no cuts and
/// width <= limits.max_width the circuit is returned as a single fragment.
///
/// Fragment qubits are the wire-initial segments in wire order, followed by
/// one qubit per downstream cut in cut order.
///
/// Throws CircuitError if a cut is not a DAG edge or leaves both of its gates
/// connected; InfeasibleError if the pieces cannot be packed within limits.
std::vector<SubcircuitSpec> apply_cuts(const Circuit& c, const std::vector<CutPoint>& cuts,
                                       const CutConstraints& limits = {});

/// Exact search for the cheapest plan: minimal K, then minimal widest
/// fragment, then lexicographically smallest cut edges. Cuts between two
/// gates where one side only has single-qubit gates before the next
/// multi-qubit gate are represented by the earliest equivalent edge.
///
/// Throws InfeasibleError if no plan within constraints.max_cuts exists.
CutPlan find_cuts(const Circuit& c, const CutConstraints& constraints);

/// Builds a plan from explicit cuts (used for hand-constructed checks).
CutPlan make_plan(const Circuit& c, const std::vector<CutPoint>& cuts,
                  const CutConstraints& limits = {});

std::string cut_plan_json(const CutPlan& plan);

}  // namespace qcut
