#include "qcut/cutter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "json.hpp"
#include "qcut/qasm.hpp"

namespace qcut {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<int> parent_;
};

// Longest-first placement of component widths into at most `bins` fragments,
// each new component going to the currently narrowest fragment (lowest index
// on ties). Returns the fragment of each component.
std::vector<int> pack_components(const std::vector<int>& widths, int bins) {
  const int k = static_cast<int>(widths.size());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return widths[a] > widths[b]; });
  const int used = std::min(bins, k);
  std::vector<int> load(used, 0), assign(k, 0);
  for (int comp : order) {
    const int target = static_cast<int>(std::min_element(load.begin(), load.end()) - load.begin());
    assign[comp] = target;
    load[target] += widths[comp];
  }
  return assign;
}

int packed_max_width(std::vector<int> widths, int bins) {
  const auto assign = pack_components(widths, bins);
  std::vector<int> load(std::min<std::size_t>(bins, widths.size()), 0);
  for (std::size_t i = 0; i < widths.size(); ++i) load[assign[i]] += widths[i];
  return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

// Per-wire gate lists and the segment structure induced by a set of cuts.
struct WireIndex {
  std::vector<std::vector<int>> gates_on;  // wire -> gate ids in order

  explicit WireIndex(const Circuit& c) : gates_on(c.width()) {
    for (std::size_t g = 0; g < c.size(); ++g)
      for (int k = 0; k < c[g].arity(); ++k) gates_on[c[g].qubits[k]].push_back(static_cast<int>(g));
  }
};

struct Segment {
  int wire = 0;
  int start_cut = -1;  // cut this segment is initialized from
  int end_cut = -1;    // cut this segment is measured for
  int first_gate = -1;
  int component = -1;
};

struct Partition {
  std::vector<Segment> segments;
  std::vector<std::array<int, 2>> gate_segment;  // gate, operand slot -> segment
  std::vector<int> gate_component;
  std::vector<int> component_width;
};

Partition partition(const Circuit& c, const std::vector<CutPoint>& cuts) {
  const WireIndex wires(c);
  const auto edges = dag_edges(c);
  const std::set<DagEdge> edge_set(edges.begin(), edges.end());

  std::map<std::pair<int, int>, int> cut_after;  // (wire, from_gate) -> cut index
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const CutPoint& cp = cuts[k];
    if (cp.wire != cp.edge.wire || !edge_set.count(cp.edge))
      throw CircuitError("cut " + std::to_string(k) + " is not an edge of the circuit DAG");
    if (!cut_after.emplace(std::pair{cp.wire, cp.edge.from_gate}, static_cast<int>(k)).second)
      throw CircuitError("duplicate cut on wire " + std::to_string(cp.wire));
  }

  const int num_gates = static_cast<int>(c.size());
  UnionFind uf(num_gates);
  for (const DagEdge& e : edges)
    if (!cut_after.count({e.wire, e.from_gate})) uf.unite(e.from_gate, e.to_gate);

  Partition p;
  p.gate_segment.assign(num_gates, {-1, -1});
  std::map<int, int> root_component;
  const auto component_of_root = [&](int root) {
    auto [it, fresh] = root_component.emplace(root, static_cast<int>(p.component_width.size()));
    if (fresh) p.component_width.push_back(0);
    return it->second;
  };
  // Components are numbered by their earliest gate.
  p.gate_component.resize(num_gates);
  for (int g = 0; g < num_gates; ++g) p.gate_component[g] = component_of_root(uf.find(g));

  for (int w = 0; w < c.width(); ++w) {
    const auto& seq = wires.gates_on[w];
    Segment seg;
    seg.wire = w;
    if (seq.empty()) {
      seg.component = static_cast<int>(p.component_width.size());
      p.component_width.push_back(1);
      p.segments.push_back(seg);
      continue;
    }
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const int g = seq[i];
      if (seg.first_gate < 0) {
        seg.first_gate = g;
        seg.component = p.gate_component[g];
      }
      const int slot = c[g].qubits[0] == w ? 0 : 1;
      p.gate_segment[g][slot] = static_cast<int>(p.segments.size());
      const auto cut = cut_after.find({w, g});
      if (cut != cut_after.end()) {
        seg.end_cut = cut->second;
        p.segments.push_back(seg);
        ++p.component_width[seg.component];
        seg = Segment{};
        seg.wire = w;
        seg.start_cut = cut->second;
      }
    }
    p.segments.push_back(seg);
    ++p.component_width[seg.component];
  }

  for (std::size_t k = 0; k < cuts.size(); ++k)
    if (p.gate_component[cuts[k].edge.from_gate] == p.gate_component[cuts[k].edge.to_gate])
      throw CircuitError("cut " + std::to_string(k) + " on wire " + std::to_string(cuts[k].wire) +
                         " does not separate the circuit");
  return p;
}

SubcircuitSpec build_fragment(const Circuit& c, const Partition& p, const std::vector<int>& comps) {
  std::vector<bool> in_fragment(p.component_width.size(), false);
  for (int comp : comps) in_fragment[comp] = true;

  std::vector<int> segs;
  for (std::size_t s = 0; s < p.segments.size(); ++s)
    if (in_fragment[p.segments[s].component]) segs.push_back(static_cast<int>(s));
  std::stable_sort(segs.begin(), segs.end(), [&](int a, int b) {
    const Segment& sa = p.segments[a];
    const Segment& sb = p.segments[b];
    const bool fa = sa.start_cut >= 0, fb = sb.start_cut >= 0;
    if (fa != fb) return !fa;
    return fa ? sa.start_cut < sb.start_cut : sa.wire < sb.wire;
  });

  SubcircuitSpec spec;
  std::vector<int> qubit_of_segment(p.segments.size(), -1);
  spec.fragment = Circuit(static_cast<int>(segs.size()));
  spec.output_map.assign(segs.size(), -1);
  for (std::size_t q = 0; q < segs.size(); ++q) {
    const Segment& s = p.segments[segs[q]];
    const int qi = static_cast<int>(q);
    qubit_of_segment[segs[q]] = qi;
    spec.qubit_wire.push_back(s.wire);
    if (s.start_cut >= 0) spec.downstream.push_back({s.start_cut, qi});
    if (s.end_cut >= 0) {
      spec.upstream.push_back({s.end_cut, qi});
    } else {
      spec.effective_qubits.push_back(qi);
      spec.output_map[q] = s.wire;
    }
  }
  const auto by_cut = [](const CutRole& a, const CutRole& b) { return a.cut < b.cut; };
  std::sort(spec.upstream.begin(), spec.upstream.end(), by_cut);
  std::sort(spec.downstream.begin(), spec.downstream.end(), by_cut);

  for (std::size_t g = 0; g < c.size(); ++g) {
    if (!in_fragment[p.gate_component[g]]) continue;
    Gate local = c[g];
    for (int k = 0; k < local.arity(); ++k) local.qubits[k] = qubit_of_segment[p.gate_segment[g][k]];
    spec.fragment.append(local);
    spec.gate_ids.push_back(static_cast<int>(g));
  }
  return spec;
}

SubcircuitSpec whole_circuit(const Circuit& c) {
  SubcircuitSpec spec;
  spec.fragment = c;
  for (int q = 0; q < c.width(); ++q) {
    spec.effective_qubits.push_back(q);
    spec.output_map.push_back(q);
    spec.qubit_wire.push_back(q);
  }
  spec.gate_ids.resize(c.size());
  std::iota(spec.gate_ids.begin(), spec.gate_ids.end(), 0);
  return spec;
}

// Search state shared by all branches. Only one representative edge per run
// of single-qubit gates between two multi-qubit gates on a wire is a cut
// candidate; every other edge is always kept.
class CutSearch {
 public:
  CutSearch(const Circuit& c, const CutConstraints& limits) : c_(c), limits_(limits), wires_(c) {
    const auto edges = dag_edges(c);
    std::set<std::pair<int, int>> candidate_keys;
    for (int w = 0; w < c.width(); ++w) {
      const auto& seq = wires_.gates_on[w];
      int last_multi = -1;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (c[seq[i]].arity() < 2) continue;
        if (last_multi >= 0) candidate_keys.insert({w, seq[last_multi]});
        last_multi = static_cast<int>(i);
      }
    }
    base_ = UnionFind(static_cast<int>(c.size()));
    for (const DagEdge& e : edges) {
      if (candidate_keys.count({e.wire, e.from_gate}))
        candidates_.push_back(e);
      else
        base_.unite(e.from_gate, e.to_gate);
    }
    for (int w = 0; w < c.width(); ++w)
      if (wires_.gates_on[w].empty()) ++idle_wires_;
  }

  const std::vector<DagEdge>& candidates() const { return candidates_; }

  // Widest packed fragment for the given candidate subset, or nullopt if the
  // subset is invalid or violates the limits.
  std::optional<int> score(const std::vector<int>& chosen, std::vector<int>& stamp,
                           std::vector<int>& widths) const {
    UnionFind uf = base_;
    std::size_t next = 0;
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      if (next < chosen.size() && chosen[next] == static_cast<int>(i)) {
        ++next;
        continue;
      }
      uf.unite(candidates_[i].from_gate, candidates_[i].to_gate);
    }
    for (int idx : chosen)
      if (uf.find(candidates_[idx].from_gate) == uf.find(candidates_[idx].to_gate)) return std::nullopt;

    widths.clear();
    std::fill(stamp.begin(), stamp.end(), -1);
    const auto add = [&](int gate) {
      const int root = uf.find(gate);
      if (stamp[root] < 0) {
        stamp[root] = static_cast<int>(widths.size());
        widths.push_back(0);
      }
      ++widths[stamp[root]];
    };
    for (int w = 0; w < c_.width(); ++w)
      if (!wires_.gates_on[w].empty()) add(wires_.gates_on[w].front());
    for (int idx : chosen) add(candidates_[idx].to_gate);
    for (int i = 0; i < idle_wires_; ++i) widths.push_back(1);

    for (int wdt : widths)
      if (wdt > limits_.max_width) return std::nullopt;
    const int maxw = packed_max_width(widths, limits_.max_subcircuits);
    if (maxw > limits_.max_width) return std::nullopt;
    return maxw;
  }

 private:
  const Circuit& c_;
  CutConstraints limits_;
  WireIndex wires_;
  std::vector<DagEdge> candidates_;
  UnionFind base_;
  int idle_wires_ = 0;
};

struct Best {
  int max_width = INT_MAX;
  std::vector<int> chosen;
  bool better_than(const Best& o) const {
    if (max_width != o.max_width) return max_width < o.max_width;
    return chosen < o.chosen;
  }
};

std::optional<Best> search_k(const CutSearch& search, int k, int num_gates) {
  const int m = static_cast<int>(search.candidates().size());
  if (k > m) return std::nullopt;
  std::vector<Best> per_root(m);
#pragma omp parallel
  {
    std::vector<int> stamp(num_gates), widths, chosen(k);
#pragma omp for schedule(dynamic, 1)
    for (int root = 0; root <= m - k; ++root) {
      Best& best = per_root[root];
      // Enumerate the remaining k-1 indices in lexicographic order.
      chosen[0] = root;
      for (int i = 1; i < k; ++i) chosen[i] = root + i;
      for (;;) {
        if (auto s = search.score(chosen, stamp, widths); s && *s < best.max_width) {
          best.max_width = *s;
          best.chosen = chosen;
        }
        int pos = k - 1;
        while (pos >= 1 && chosen[pos] == m - k + pos) --pos;
        if (pos < 1) break;
        ++chosen[pos];
        for (int i = pos + 1; i < k; ++i) chosen[i] = chosen[i - 1] + 1;
      }
    }
  }
  std::optional<Best> out;
  for (const Best& b : per_root)
    if (b.max_width != INT_MAX && (!out || b.better_than(*out))) out = b;
  return out;
}

}  // namespace

int CutPlan::max_fragment_width() const {
  int w = 0;
  for (const auto& s : subcircuits) w = std::max(w, s.width());
  return w;
}

int CutPlan::total_width() const {
  int w = 0;
  for (const auto& s : subcircuits) w += s.width();
  return w;
}

std::vector<SubcircuitSpec> apply_cuts(const Circuit& c, const std::vector<CutPoint>& cuts,
                                       const CutConstraints& limits) {
  if (cuts.empty() && c.width() <= limits.max_width) return {whole_circuit(c)};

  const Partition p = partition(c, cuts);
  for (int w : p.component_width)
    if (w > limits.max_width) throw InfeasibleError("a connected piece exceeds the width limit");
  const auto assign = pack_components(p.component_width, limits.max_subcircuits);
  const int bins = assign.empty() ? 0 : *std::max_element(assign.begin(), assign.end()) + 1;

  std::vector<std::vector<int>> groups(bins);
  for (std::size_t comp = 0; comp < assign.size(); ++comp) groups[assign[comp]].push_back(static_cast<int>(comp));
  // Order fragments by their lowest segment (wire-major).
  std::vector<std::pair<int, int>> order;
  for (int b = 0; b < bins; ++b) {
    int first = INT_MAX;
    for (std::size_t s = 0; s < p.segments.size(); ++s)
      if (assign[p.segments[s].component] == b) {
        first = static_cast<int>(s);
        break;
      }
    order.push_back({first, b});
  }
  std::sort(order.begin(), order.end());

  std::vector<SubcircuitSpec> out;
  for (const auto& [first, b] : order) {
    out.push_back(build_fragment(c, p, groups[b]));
    if (out.back().width() > limits.max_width)
      throw InfeasibleError("fragment exceeds the width limit");
  }
  return out;
}

CutPlan make_plan(const Circuit& c, const std::vector<CutPoint>& cuts, const CutConstraints& limits) {
  CutPlan plan;
  plan.cuts = cuts;
  plan.subcircuits = apply_cuts(c, cuts, limits);
  plan.objective_cost = std::pow(4.0, static_cast<double>(cuts.size()));
  return plan;
}

CutPlan find_cuts(const Circuit& c, const CutConstraints& limits) {
  if (limits.max_width < 2 || limits.max_subcircuits < 2 || limits.max_cuts < 1)
    throw CircuitError("cut constraints need max_width >= 2, max_subcircuits >= 2, max_cuts >= 1");

  const CutSearch search(c, limits);
  const int n = c.width();
  for (int k = 0; k <= limits.max_cuts; ++k) {
    if (static_cast<long>(n) + k > static_cast<long>(limits.max_subcircuits) * limits.max_width) continue;
    if (k == 0) {
      if (n <= limits.max_width) return make_plan(c, {}, limits);
      std::vector<int> stamp(c.size()), widths;
      if (search.score({}, stamp, widths)) return make_plan(c, {}, limits);
      continue;
    }
    const auto best = search_k(search, k, static_cast<int>(c.size()));
    if (!best) continue;
    std::vector<CutPoint> cuts;
    for (int idx : best->chosen) {
      const DagEdge& e = search.candidates()[idx];
      cuts.push_back({e.wire, e});
    }
    return make_plan(c, cuts, limits);
  }
  throw InfeasibleError("no cut plan with at most " + std::to_string(limits.max_cuts) +
                        " cuts fits width " + std::to_string(limits.max_width) + " and " +
                        std::to_string(limits.max_subcircuits) + " subcircuits");
}

std::string cut_plan_json(const CutPlan& plan) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["num_cuts"] = plan.num_cuts();
  j["objective_cost"] = plan.objective_cost;
  ordered_json cuts = ordered_json::array();
  for (const auto& cp : plan.cuts)
    cuts.push_back({{"wire", cp.wire}, {"from_gate", cp.edge.from_gate}, {"to_gate", cp.edge.to_gate}});
  j["cuts"] = cuts;
  ordered_json frags = ordered_json::array();
  for (const auto& s : plan.subcircuits) {
    ordered_json f;
    f["width"] = s.width();
    f["qasm"] = serialize_circuit(s.fragment);
    ordered_json up = ordered_json::array(), down = ordered_json::array();
    for (const auto& r : s.upstream) up.push_back({{"cut", r.cut}, {"qubit", r.qubit}});
    for (const auto& r : s.downstream) down.push_back({{"cut", r.cut}, {"qubit", r.qubit}});
    f["upstream_cuts"] = up;
    f["downstream_cuts"] = down;
    f["effective_qubits"] = s.effective_qubits;
    f["output_map"] = s.output_map;
    frags.push_back(f);
  }
  j["subcircuits"] = frags;
  return j.dump(2);
}

}  // namespace qcut
