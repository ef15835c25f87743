#pragma once

#include <span>
#include <vector>

#include "qcut/cutter.hpp"
#include "qcut/evaluator.hpp"

namespace qcut {

/// Per-cut decomposition index in {1, 2, 3, 4}.
///
/// Upstream side:   1 -> I + Z, 2 -> I - Z, 3 -> X, 4 -> Y.
/// Downstream side: 1 -> p(|0>), 2 -> p(|1>), 3 -> 2p(|+>) - p(|0>) - p(|1>),
///                  4 -> 2p(|+i>) - p(|0>) - p(|1>).
using TermIndex = std::vector<int>;

/// Multilinear combination of one fragment's attributed vectors for the term
/// indices of its upstream and downstream cuts (in role order).
std::vector<double> fragment_term(const SubcircuitSpec& spec, std::span<const int> upstream_terms,
                                  std::span<const int> downstream_terms, const AttributedFragment& attributed);

/// Same, picking the fragment's entries out of a full TermIndex over all cuts.
std::vector<double> fragment_term(const SubcircuitSpec& spec, const TermIndex& term,
                                  const AttributedFragment& attributed);

/// (1/2^K) * sum over all 4^K term indices of the Kronecker product of the
/// fragment terms, mapped back to the original qubit order. Negative entries
/// from floating-point cancellation are kept as they are.
ProbVector reconstruct(const CutPlan& plan, const std::vector<AttributedFragment>& attributed);

/// (1/2) * sum_k |p_k - q_k|.
double total_variation_distance(std::span<const double> p, std::span<const double> q);
inline double total_variation_distance(const ProbVector& p, const ProbVector& q) {
  return total_variation_distance(p.p, q.p);
}

}  // namespace qcut
