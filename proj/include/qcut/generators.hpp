#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qcut/circuit.hpp"

namespace qcut {

enum class Family { Adder, AQFT, BV, HWEA, Supremacy };

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

struct GenSpec {
  Family family = Family::BV;
  int n = 0;
  std::uint64_t seed = 0;

  int aqft_degree = 0;  // 0: ceil(log2 n) + 2
  int hwea_layers = 1;
  std::string bv_hidden;  // empty: all ones; char i drives input qubit i
  int rows = 0;           // supremacy grid; 0: nearest-square factorization of n
  int cols = 0;
  int depth = 8;
  std::optional<std::uint64_t> adder_a;  // empty: drawn from the seed
  std::optional<std::uint64_t> adder_b;
};

/// Deterministic benchmark circuit for `spec`; throws CircuitError when n is
/// invalid for the family.
Circuit gen(const GenSpec& spec);

// Family builders. Qubit layouts:
//   adder:     q0 = carry-in ancilla, b_i = 1 + 2i, a_i = 2 + 2i, q[n-1] = carry out;
//              the sum lands in b with the carry in q[n-1].
//   bv:        inputs 0..n-2, target n-1.
//   supremacy: qubit r * cols + c.
Circuit ripple_carry_adder(int n, std::uint64_t a, std::uint64_t b);
Circuit approximate_qft(int n, int degree);
Circuit bernstein_vazirani(int n, std::string_view hidden);
Circuit hardware_efficient_ansatz(int n, int layers, std::uint64_t seed);
Circuit supremacy_grid(int rows, int cols, int depth, std::uint64_t seed);

// Gate-set decompositions used by the builders.
void append_toffoli(Circuit& c, int a, int b, int target);
void append_controlled_phase(Circuit& c, int a, int b, double lambda);

}  // namespace qcut
