// Acceptance suite: one PASS/FAIL line per criterion. Run with
// `--criterion N` to check a single criterion; exit status is nonzero if any
// checked criterion fails.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "qcut/bench.hpp"
#include "qcut/generators.hpp"
#include "qcut/qasm.hpp"
#include "support.hpp"

using namespace qcut;

namespace {

constexpr double kCutTvdTol = 1e-6;
constexpr double kBlockedAbsTol = 1e-12;
constexpr double kMemoryRelTol = 0.005;
constexpr double kBvTol = 1e-10;

// Cut-plan coverage for the oracle sweep.
constexpr int kMaxCuts = 3;
constexpr int kMaxSubcircuits = 5;
constexpr int kAqftDegree = 2;
constexpr int kSupremacyDepth = 4;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Instance {
  std::string name;
  Circuit circuit;
};

std::vector<Instance> sweep_instances() {
  std::vector<Instance> out;
  for (int n : {6, 8, 10, 12, 14}) {
    out.push_back({"adder-" + std::to_string(n), gen({.family = Family::Adder, .n = n, .seed = 1})});
    out.push_back({"aqft-" + std::to_string(n), gen({.family = Family::AQFT, .n = n, .aqft_degree = kAqftDegree})});
    out.push_back({"bv-" + std::to_string(n), gen({.family = Family::BV, .n = n})});
    out.push_back({"hwea-" + std::to_string(n), gen({.family = Family::HWEA, .n = n, .seed = 1})});
  }
  for (auto [rows, cols] : {std::pair{3, 2}, {3, 3}, {3, 4}})
    out.push_back({"supremacy-" + std::to_string(rows) + "x" + std::to_string(cols),
                   gen({.family = Family::Supremacy,
                        .n = rows * cols,
                        .seed = 1,
                        .rows = rows,
                        .cols = cols,
                        .depth = kSupremacyDepth})});
  return out;
}

struct PlanRun {
  std::string instance;
  int n = 0;
  int k = 0;
  int width_cap = 0;
  std::size_t fragments = 0;
  int total_width = 0;
  std::size_t variants = 0;
  std::size_t variants_law = 0;
  double tvd = 0;
};

// Every distinct plan the cutter produces for fragment caps n-1 down to 2,
// run through the full cut path against direct simulation.
const std::vector<PlanRun>& plan_runs() {
  static const std::vector<PlanRun> runs = [] {
    std::vector<PlanRun> out;
    for (const auto& inst : sweep_instances()) {
      const int n = inst.circuit.width();
      const ProbVector direct = probabilities(simulate(inst.circuit));
      std::set<std::vector<DagEdge>> seen;
      for (int cap = n - 1; cap >= 2; --cap) {
        CutPlan plan;
        try {
          plan = find_cuts(inst.circuit, {cap, kMaxSubcircuits, kMaxCuts});
        } catch (const InfeasibleError&) {
          break;  // smaller caps are infeasible too
        }
        std::vector<DagEdge> key;
        for (const auto& c : plan.cuts) key.push_back(c.edge);
        if (!seen.insert(key).second) continue;

        PlanRun r;
        r.instance = inst.name;
        r.n = n;
        r.k = plan.num_cuts();
        r.width_cap = cap;
        r.fragments = plan.subcircuits.size();
        r.total_width = plan.total_width();
        r.variants = total_variants(plan.subcircuits);
        for (const auto& s : plan.subcircuits) {
          std::size_t v = 1;
          for (std::size_t i = 0; i < s.upstream.size(); ++i) v *= 3;
          for (std::size_t i = 0; i < s.downstream.size(); ++i) v *= 4;
          r.variants_law += v;
        }
        const auto raw = evaluate_all(plan.subcircuits);
        const auto rec = reconstruct(plan, attribute_all(plan.subcircuits, raw));
        r.tvd = total_variation_distance(rec, direct);
        out.push_back(r);
      }
    }
    return out;
  }();
  return runs;
}

std::string instances_without_plans(const std::vector<PlanRun>& runs) {
  std::set<std::string> covered;
  for (const auto& r : runs) covered.insert(r.instance);
  std::string missing;
  for (const auto& inst : sweep_instances())
    if (!covered.count(inst.name)) missing += (missing.empty() ? "" : ",") + inst.name;
  return missing;
}

Outcome criterion_oracle_equivalence() {
  const auto& runs = plan_runs();
  std::map<int, int> per_k;
  double worst = 0;
  std::string worst_at;
  for (const auto& r : runs) {
    ++per_k[r.k];
    if (r.tvd >= worst) {
      worst = r.tvd;
      worst_at = r.instance + " K=" + std::to_string(r.k);
    }
  }
  const std::string missing = instances_without_plans(runs);
  std::ostringstream d;
  d << runs.size() << " plans (K=1: " << per_k[1] << ", K=2: " << per_k[2] << ", K=3: " << per_k[3]
    << "), max TVD " << worst << " at " << worst_at << ", tol " << kCutTvdTol;
  if (!missing.empty()) d << "; no plan for " << missing;
  return {worst <= kCutTvdTol && missing.empty() && per_k[1] > 0 && per_k[2] > 0 && per_k[3] > 0, d.str()};
}

Outcome criterion_single_cut_structure() {
  std::ifstream in(QCUT_DATA "/five_qubit_cut.qc");
  std::stringstream ss;
  ss << in.rdbuf();
  const Circuit c = parse_circuit(ss.str());
  const CutPlan plan = find_cuts(c, {3, kMaxSubcircuits, 10});
  std::ostringstream d;
  d << "K=" << plan.num_cuts();
  bool ok = plan.num_cuts() == 1 && plan.subcircuits.size() == 2 && plan.cuts[0].wire == 2;
  if (ok) {
    const auto& a = plan.subcircuits[0];
    const auto& b = plan.subcircuits[1];
    const auto va = enumerate_variants(a).size(), vb = enumerate_variants(b).size();
    d << ", cut on q" << plan.cuts[0].wire << ", widths " << a.width() << "/" << b.width() << ", effective "
      << a.effective_count() << "/" << b.effective_count() << ", variants " << va << "+" << vb;
    ok = a.width() == 3 && b.width() == 3 && a.effective_count() == 2 && b.effective_count() == 3 && va == 3 &&
         vb == 4 && a.upstream.size() == 1 && b.downstream.size() == 1;
    const auto& from = c[plan.cuts[0].edge.from_gate];
    const auto& to = c[plan.cuts[0].edge.to_gate];
    ok = ok && from.kind == GateKind::CZ && to.kind == GateKind::CZ;
  }
  return {ok, d.str()};
}

Outcome criterion_width_identity() {
  const auto& runs = plan_runs();
  std::size_t holds = 0;
  for (const auto& r : runs) holds += r.total_width == r.n + r.k;
  const CutPlan bv = find_cuts(gen({.family = Family::BV, .n = 12}), {7, kMaxSubcircuits, 10});
  std::ostringstream d;
  d << holds << "/" << runs.size() << " plans satisfy width + K = sum of fragment widths; BV-12 cap 7: K="
    << bv.num_cuts() << ", fragment widths sum " << bv.total_width();
  return {holds == runs.size() && !runs.empty() && bv.total_width() == 13 && bv.max_fragment_width() <= 7, d.str()};
}

Outcome criterion_memory_table() {
  const std::vector<std::pair<int, double>> table{
      {10, 1.63e-5}, {12, 6.55e-5}, {14, 2.62e-4}, {15, 5.24e-4}, {16, 1.04e-3},
      {18, 4.19e-3}, {20, 1.67e-2}, {22, 6.71e-2}, {24, 0.26},    {25, 0.53},
      {26, 1.07},    {28, 4.29},    {30, 17.17},   {32, 68.71},   {34, 274.87}};
  int within = 0;
  std::string off;
  for (const auto& [n, gb] : table) {
    const double ours = estimate_memory_gb(n);
    const double rel = std::abs(ours - gb) / gb;
    if (rel <= kMemoryRelTol) {
      ++within;
    } else {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s%d: %.6g vs %.3g (%.2f%%)", off.empty() ? "" : ", ", n, ours, gb, 100 * rel);
      off += buf;
    }
  }
  std::ostringstream d;
  d << within << "/15 rows within " << 100 * kMemoryRelTol << "%";
  if (!off.empty()) d << "; outside: " << off << " (table values are truncated, not rounded)";
  return {within == 15, d.str()};
}

Outcome criterion_blocked_equivalence() {
  test::Rand r(20240917);
  double worst = 0;
  int runs = 0, replay_mismatch = 0, full_width_transfers = 0;
  for (int circuit = 0; circuit < 50; ++circuit) {
    const int n = r.range(4, 12);
    const Circuit c = test::random_circuit(r, n, r.range(4 * n, 8 * n));
    const auto naive = probabilities(simulate(c, {28, Backend::Serial})).p;
    for (int nc = 2; nc <= n; ++nc) {
      const std::uint64_t chunks = std::uint64_t{1} << (n - nc);
      for (std::uint64_t spaces : {std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{4}}) {
        if (spaces > chunks) break;
        const ChunkedResult res = chunked_simulate(c, nc, static_cast<int>(spaces));
        worst = std::max(worst, test::max_abs_diff(res.probs.p, naive));
        const BlockedCircuit b = blocking_transpile(c, nc);
        replay_mismatch += res.log.chunk_transfers != test::replay_transfers(b, n, nc, static_cast<int>(spaces));
        if (nc == n) full_width_transfers += res.log.chunk_transfers != 0;
        ++runs;
      }
    }
  }
  std::ostringstream d;
  d << runs << " runs over 50 circuits, max-abs " << worst << " (tol " << kBlockedAbsTol << "), replay mismatches "
    << replay_mismatch << ", nonzero transfers at nc=n " << full_width_transfers;
  return {worst <= kBlockedAbsTol && replay_mismatch == 0 && full_width_transfers == 0, d.str()};
}

Outcome criterion_variant_count() {
  const auto& runs = plan_runs();
  std::size_t law = 0, bound = 0;
  for (const auto& r : runs) {
    law += r.variants == r.variants_law;
    bound += r.variants <= r.fragments * (std::size_t{1} << (2 * r.k));
  }
  std::ostringstream d;
  d << law << "/" << runs.size() << " match sum 3^up*4^down, " << bound << "/" << runs.size()
    << " within fragments*4^K";
  return {law == runs.size() && bound == runs.size() && !runs.empty(), d.str()};
}

Outcome criterion_generators() {
  double bv_worst = 0;
  for (int n = 2; n <= 10; ++n) {
    for (std::uint64_t h = 0; h < (std::uint64_t{1} << (n - 1)); ++h) {
      std::string hidden(n - 1, '0');
      for (int i = 0; i < n - 1; ++i)
        if (h >> i & 1) hidden[i] = '1';
      const auto p = probabilities(simulate(gen({.family = Family::BV, .n = n, .bv_hidden = hidden})));
      bv_worst = std::max(bv_worst, std::abs(1.0 - p[(std::size_t{1} << (n - 1)) | h]));
    }
  }
  int adder_bad = 0, adder_cases = 0;
  for (int bits = 1; bits <= 3; ++bits) {
    const int n = 2 * bits + 2;
    for (std::uint64_t a = 0; a < (1u << bits); ++a)
      for (std::uint64_t b = 0; b < (1u << bits); ++b) {
        const auto p = probabilities(simulate(ripple_carry_adder(n, a, b))).p;
        const auto out = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
        std::uint64_t sum = ((out >> (n - 1)) & 1u) << bits;
        for (int i = 0; i < bits; ++i) sum |= ((out >> (1 + 2 * i)) & 1u) << i;
        adder_bad += sum != a + b || std::abs(1.0 - p[out]) > kBvTol;
        ++adder_cases;
      }
  }
  int nondeterministic = 0;
  for (std::uint64_t seed : {0u, 7u, 12345u}) {
    const std::vector<GenSpec> specs{
        {.family = Family::Adder, .n = 12, .seed = seed},
        {.family = Family::AQFT, .n = 12, .seed = seed},
        {.family = Family::BV, .n = 12, .seed = seed},
        {.family = Family::HWEA, .n = 12, .seed = seed, .hwea_layers = 2},
        {.family = Family::Supremacy, .n = 12, .seed = seed, .rows = 3, .cols = 4, .depth = 8}};
    for (const auto& s : specs) nondeterministic += serialize_circuit(gen(s)) != serialize_circuit(gen(s));
  }
  std::ostringstream d;
  d << "BV n<=10 all hidden strings, max |1-p| " << bv_worst << "; adder " << adder_cases - adder_bad << "/"
    << adder_cases << " sums correct; " << nondeterministic << " nondeterministic generator outputs";
  return {bv_worst <= kBvTol && adder_bad == 0 && nondeterministic == 0, d.str()};
}

Outcome criterion_runtime_report() {
  using Clock = std::chrono::steady_clock;
  int runs = 0, full_faster = 0;
  for (const auto& inst : sweep_instances()) {
    if (inst.circuit.width() < 10) continue;
    const int cap = inst.circuit.width() - 2;
    CutPathResult cut;
    try {
      cut = run_cut_path(inst.circuit, {cap, kMaxSubcircuits, kMaxCuts});
    } catch (const InfeasibleError&) {
      continue;
    }
    const auto t0 = Clock::now();
    const ProbVector direct = probabilities(simulate(inst.circuit));
    const double full_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    ++runs;
    full_faster += full_ms < cut.timings.cut_path_ms();
    std::printf("  info: %-14s K=%d cut path %.3f ms, full %.3f ms\n", inst.name.c_str(), cut.plan.num_cuts(),
                cut.timings.cut_path_ms(), full_ms);
  }
  std::ostringstream d;
  d << "full simulation faster in " << full_faster << "/" << runs << " runs with n >= 10 (recorded, not asserted)";
  return {true, d.str()};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "cut-path oracle equivalence", criterion_oracle_equivalence},
      {2, "single-cut structure", criterion_single_cut_structure},
      {3, "width identity", criterion_width_identity},
      {4, "memory table", criterion_memory_table},
      {5, "blocked-execution equivalence", criterion_blocked_equivalence},
      {6, "variant-count law", criterion_variant_count},
      {7, "generator correctness", criterion_generators},
      {8, "qualitative runtime report", criterion_runtime_report},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);

  int failed = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
