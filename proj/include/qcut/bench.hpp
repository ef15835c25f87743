#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcut/blocking.hpp"
#include "qcut/cutter.hpp"
#include "qcut/evaluator.hpp"
#include "qcut/reconstructor.hpp"

namespace qcut {

struct PhaseTimings {
  double cut_ms = 0;
  double eval_ms = 0;
  double attr_ms = 0;
  double recon_ms = 0;
  double full_ms = 0;

  double cut_path_ms() const { return cut_ms + eval_ms + attr_ms + recon_ms; }
};

struct CutPathResult {
  CutPlan plan;
  std::vector<FragmentResults> raw;
  ProbVector reconstructed;
  std::size_t variants = 0;
  PhaseTimings timings;
};

/// Cut, evaluate, attribute and reconstruct. Checks the width identity and the
/// variant-count law before returning (std::logic_error if either fails).
CutPathResult run_cut_path(const Circuit& c, const CutConstraints& constraints, const EvalOptions& eval = {});

/// Same pipeline on a precomputed plan.
CutPathResult run_cut_path(const CutPlan& plan, const EvalOptions& eval = {});

struct FragmentShape {
  int width = 0;
  int effective = 0;
};

struct BenchRecord {
  std::string family = "custom";
  int n = 0;
  int k = 0;
  std::vector<FragmentShape> fragments;
  std::size_t variants = 0;
  PhaseTimings timings;
  double tvd = 0;
  std::optional<ExchangeLog> exchange;
  double mem_gb = 0;

  bool width_identity() const;
};

std::string record_json(const BenchRecord& r);
BenchRecord record_from_json(const std::string& text);

/// Report columns: family,n,K,frag_widths,effective,variants,t_cut_ms,
/// t_eval_ms,t_attr_ms,t_recon_ms,t_full_ms,tvd,mem_gb,width_identity.
/// Fragment lists are ';'-separated.
std::string report_csv_header();
std::string report_csv_row(const BenchRecord& r);

/// Widths tabulated in the memory report.
const std::vector<int>& memory_table_widths();
std::string memory_csv();

/// Reads "// family=<name> ..." metadata written by the generator, if present.
std::string family_from_source(const std::string& text);

}  // namespace qcut
