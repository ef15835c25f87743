#include "doctest.h"

#include "json.hpp"
#include "qcut/cutter.hpp"
#include "qcut/evaluator.hpp"
#include "qcut/generators.hpp"
#include "support.hpp"

using namespace qcut;
using qcut::test::Rand;

namespace {

CutPoint cut_between(const Circuit& c, int wire, int from, int to) {
  for (const DagEdge& e : dag_edges(c))
    if (e.wire == wire && e.from_gate == from && e.to_gate == to) return {wire, e};
  FAIL("no such edge");
  return {};
}

std::size_t expected_variants(const CutPlan& plan) {
  std::size_t total = 0;
  for (const auto& s : plan.subcircuits) {
    std::size_t v = 1;
    for (std::size_t i = 0; i < s.upstream.size(); ++i) v *= 3;
    for (std::size_t i = 0; i < s.downstream.size(); ++i) v *= 4;
    total += v;
  }
  return total;
}

}  // namespace

TEST_CASE("five-qubit chain: single cut on q2 between the first two cz gates it meets") {
  const Circuit c = test::five_qubit_chain();
  const CutPlan plan = find_cuts(c, {3, 5, 10});
  REQUIRE(plan.num_cuts() == 1);
  CHECK(plan.cuts[0].wire == 2);
  CHECK(c[plan.cuts[0].edge.from_gate].kind == GateKind::CZ);
  CHECK(c[plan.cuts[0].edge.to_gate].kind == GateKind::CZ);
  CHECK(c[plan.cuts[0].edge.from_gate].qubits == std::array<int, 2>{1, 2});
  CHECK(c[plan.cuts[0].edge.to_gate].qubits == std::array<int, 2>{2, 3});
  REQUIRE(plan.subcircuits.size() == 2);
  const auto& up = plan.subcircuits[0];
  const auto& down = plan.subcircuits[1];
  CHECK(up.width() == 3);
  CHECK(down.width() == 3);
  CHECK(up.effective_count() == 2);
  CHECK(down.effective_count() == 3);
  CHECK(up.upstream.size() == 1);
  CHECK(down.downstream.size() == 1);
  CHECK(enumerate_variants(up).size() == 3);
  CHECK(enumerate_variants(down).size() == 4);
  CHECK(total_variants(plan.subcircuits) == 7);
  CHECK(plan.objective_cost == 4.0);
  // Measured-out qubit has no output wire; others map back to their wires.
  CHECK(up.output_map == std::vector<int>{0, 1, -1});
  CHECK(down.output_map == std::vector<int>{3, 4, 2});
}

TEST_CASE("three-fragment chain: middle fragment is both downstream and upstream") {
  Circuit c(4);
  c.h(0).cx(0, 1).cx(1, 2).cx(2, 3).h(3);
  const std::vector<CutPoint> cuts{cut_between(c, 1, 1, 2), cut_between(c, 2, 2, 3)};
  const CutPlan plan = make_plan(c, cuts, {2, 3, 10});
  REQUIRE(plan.subcircuits.size() == 3);
  std::vector<std::pair<std::size_t, std::size_t>> roles;
  for (const auto& s : plan.subcircuits) {
    CHECK(s.width() == 2);
    roles.emplace_back(s.upstream.size(), s.downstream.size());
  }
  std::sort(roles.begin(), roles.end());
  CHECK(roles == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}, {1, 1}});
  CHECK(total_variants(plan.subcircuits) == 3 + 12 + 4);
  CHECK(plan.total_width() == 4 + 2);

  const CutPlan found = find_cuts(c, {2, 3, 10});
  CHECK(found.num_cuts() == 2);
  CHECK(found.max_fragment_width() == 2);
}

TEST_CASE("no cut needed when the circuit already fits") {
  const Circuit c = test::five_qubit_chain();
  const CutPlan plan = find_cuts(c, {5, 5, 10});
  CHECK(plan.num_cuts() == 0);
  REQUIRE(plan.subcircuits.size() == 1);
  CHECK(plan.subcircuits[0].fragment == c);
}

TEST_CASE("infeasible and invalid constraints") {
  const Circuit c = test::five_qubit_chain();
  CHECK_THROWS_AS(find_cuts(c, {2, 5, 1}), InfeasibleError);
  CHECK_THROWS_AS(find_cuts(c, {1, 5, 10}), std::exception);
  CHECK_THROWS_AS(find_cuts(c, {3, 1, 10}), std::exception);
  CHECK_THROWS_AS(find_cuts(c, {3, 5, 0}), std::exception);
}

TEST_CASE("non-separating cuts are rejected") {
  Circuit c(2);
  c.cx(0, 1).h(0).cx(0, 1);
  // Wire 0 between the two cx gates: both ends stay connected through wire 1.
  CHECK_THROWS_AS(make_plan(c, {cut_between(c, 0, 0, 1)}), CircuitError);
  DagEdge bogus{0, 2, 1};
  CHECK_THROWS_AS(make_plan(c, {{1, bogus}}), CircuitError);
}

TEST_CASE("BV-12 at width 7: one cut, fragments sum to 13") {
  const Circuit c = gen({.family = Family::BV, .n = 12});
  const CutPlan plan = find_cuts(c, {7, 5, 10});
  CHECK(plan.num_cuts() == 1);
  CHECK(plan.total_width() == 13);
  CHECK(plan.max_fragment_width() <= 7);
}

TEST_CASE("BV-34: one cut splits into two fragments of total width 35") {
  const Circuit c = gen({.family = Family::BV, .n = 34});
  const CutPlan plan = find_cuts(c, {22, 5, 10});
  CHECK(plan.num_cuts() == 1);
  CHECK(plan.subcircuits.size() == 2);
  CHECK(plan.total_width() == 35);

  // Cutting the target after the 21st CX reproduces the uneven 22/13 split.
  const CutPlan uneven = make_plan(c, {cut_between(c, 33, 35 + 20, 35 + 21)}, {22, 5, 10});
  std::vector<int> widths;
  for (const auto& s : uneven.subcircuits) widths.push_back(s.width());
  std::sort(widths.begin(), widths.end());
  CHECK(widths == std::vector<int>{13, 22});
}

TEST_CASE("property: width identity, width bound and fragment gate coverage") {
  Rand r(404);
  int feasible = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = r.range(3, 7);
    Circuit c(n);
    for (int g = 0, count = r.range(3, 14); g < count; ++g) {
      // Sparse two-qubit structure so that cuts exist.
      if (r.uniform() < 0.4) {
        const int a = r.below(n - 1);
        c.cx(a, a + 1);
      } else {
        c.append(r.uniform() < 0.5 ? GateKind::H : GateKind::T, r.below(n));
      }
    }
    const int max_width = r.range(2, n - 1);
    CutPlan plan;
    try {
      plan = find_cuts(c, {max_width, 5, 3});
    } catch (const InfeasibleError&) {
      continue;
    }
    ++feasible;
    CHECK(plan.total_width() == n + plan.num_cuts());
    CHECK(plan.max_fragment_width() <= max_width);
    CHECK(plan.subcircuits.size() <= 5);
    CHECK(total_variants(plan.subcircuits) == expected_variants(plan));
    std::vector<int> seen(c.size(), 0);
    int effective = 0;
    for (const auto& s : plan.subcircuits) {
      for (int g : s.gate_ids) ++seen[g];
      effective += s.effective_count();
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }));
    CHECK(effective == n);
  }
  CHECK(feasible > 30);
}

TEST_CASE("cut plan json") {
  const CutPlan plan = find_cuts(test::five_qubit_chain(), {3, 5, 10});
  const auto j = nlohmann::json::parse(cut_plan_json(plan));
  CHECK(j.at("num_cuts") == 1);
  CHECK(j.at("cuts")[0].at("wire") == 2);
  CHECK(j.at("subcircuits").size() == 2);
  CHECK(j.at("subcircuits")[0].at("width") == 3);
  CHECK(j.at("subcircuits")[0].at("qasm").get<std::string>().rfind("qubits 3;", 0) == 0);
}
