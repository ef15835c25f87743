#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcut/cutter.hpp"
#include "qcut/statevector.hpp"

namespace qcut {

enum class InitState { Zero, One, Plus, PlusI };

/// Pauli operator attributed to an upstream cut qubit. A computational-basis
/// readout yields both I (all outcomes +1) and Z (outcome 1 counts -1).
enum class Pauli { I, X, Y, Z };

/// One instance of a fragment: a measurement basis per upstream cut and an
/// initial state per downstream cut, in SubcircuitSpec role order.
struct VariantAssignment {
  std::vector<MeasureBasis> upstream;
  std::vector<InitState> downstream;
  friend bool operator==(const VariantAssignment&, const VariantAssignment&) = default;
};

std::string to_string(const VariantAssignment& a);

/// All 3^up * 4^down assignments, lexicographic with the first upstream cut
/// most significant (Comp < X < Y, Zero < One < Plus < PlusI).
std::vector<VariantAssignment> enumerate_variants(const SubcircuitSpec& spec);

/// Position of `a` in enumerate_variants(spec).
std::size_t variant_index(const SubcircuitSpec& spec, const VariantAssignment& a);

/// Prepends the state preparation for each downstream qubit (One: X,
/// Plus: H, PlusI: H then S) and appends the basis rotation for each
/// upstream qubit.
Circuit build_variant_circuit(const SubcircuitSpec& spec, const VariantAssignment& a);

/// Raw computational-basis distributions of every variant of one fragment,
/// indexed like enumerate_variants.
struct FragmentResults {
  std::vector<VariantAssignment> variants;
  std::vector<ProbVector> raw;
};

struct EvalOptions {
  int workers = 0;  // 0: min(hardware threads, jobs)
  int max_width = 28;
};

class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(int fragment, std::size_t variant, const std::string& what)
      : std::runtime_error("fragment " + std::to_string(fragment) + " variant " +
                           std::to_string(variant) + ": " + what),
        fragment_(fragment),
        variant_(variant) {}
  int fragment() const { return fragment_; }
  std::size_t variant() const { return variant_; }

 private:
  int fragment_;
  std::size_t variant_;
};

int default_workers(std::size_t jobs);

/// Simulates every variant of every fragment on a pool of worker threads.
/// Output does not depend on the worker count.
std::vector<FragmentResults> evaluate_all(const std::vector<SubcircuitSpec>& specs,
                                          const EvalOptions& options = {});

std::size_t total_variants(const std::vector<SubcircuitSpec>& specs);

/// Folds the measured-out upstream qubits of `raw` into a signed vector over
/// the effective qubits. labels[k] applies to spec.upstream[k]; for I every
/// outcome counts +1, otherwise outcome 1 counts -1.
std::vector<double> attribute(const SubcircuitSpec& spec, std::span<const Pauli> labels,
                              const ProbVector& raw);

struct AttributedDistribution {
  int fragment = 0;
  VariantAssignment assignment;
  std::vector<Pauli> labels;
  std::vector<double> values;
};

/// Every attributed vector derivable from one variant: a Comp cut yields
/// both its I and Z combinations, X and Y cuts yield one each.
std::vector<AttributedDistribution> attribute_shots(const SubcircuitSpec& spec, int fragment,
                                                    const VariantAssignment& a, const ProbVector& raw);

/// Attributed vectors of one fragment keyed by (Pauli label per upstream cut,
/// init state per downstream cut), stored at
///   sum_k label_k * 4^k + sum_k init_k * 4^(up + k).
struct AttributedFragment {
  int up = 0;
  int down = 0;
  std::vector<std::vector<double>> table;

  std::size_t key(std::span<const Pauli> labels, std::span<const InitState> inits) const;
  const std::vector<double>& at(std::span<const Pauli> labels, std::span<const InitState> inits) const;
};

std::vector<AttributedFragment> attribute_all(const std::vector<SubcircuitSpec>& specs,
                                              const std::vector<FragmentResults>& results);

}  // namespace qcut
