#include "qcut/generators.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

namespace qcut {

namespace {

constexpr std::array<std::string_view, 5> kFamilyNames{"adder", "aqft", "bv", "hwea", "supremacy"};

// mt19937_64 output is fixed by the standard; the library distributions are
// not, so values are derived from raw draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t bound) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)); }

 private:
  std::mt19937_64 engine_;
};

void maj(Circuit& c, int carry, int b, int a) {
  c.cx(a, b);
  c.cx(a, carry);
  append_toffoli(c, carry, b, a);
}

void uma(Circuit& c, int carry, int b, int a) {
  append_toffoli(c, carry, b, a);
  c.cx(a, carry);
  c.cx(carry, b);
}

std::pair<int, int> near_square(int n) {
  int rows = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while (rows > 1 && n % rows != 0) --rows;
  return {rows, n / rows};
}

}  // namespace

std::string_view family_name(Family f) { return kFamilyNames[static_cast<std::size_t>(f)]; }

std::optional<Family> family_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i)
    if (kFamilyNames[i] == name) return static_cast<Family>(i);
  return std::nullopt;
}

void append_toffoli(Circuit& c, int a, int b, int t) {
  c.h(t);
  c.cx(b, t);
  c.append(GateKind::Tdg, t);
  c.cx(a, t);
  c.append(GateKind::T, t);
  c.cx(b, t);
  c.append(GateKind::Tdg, t);
  c.cx(a, t);
  c.append(GateKind::T, b);
  c.append(GateKind::T, t);
  c.h(t);
  c.cx(a, b);
  c.append(GateKind::T, a);
  c.append(GateKind::Tdg, b);
  c.cx(a, b);
}

void append_controlled_phase(Circuit& c, int a, int b, double lambda) {
  c.append(GateKind::U1, a, -1, {lambda / 2});
  c.cx(a, b);
  c.append(GateKind::U1, b, -1, {-lambda / 2});
  c.cx(a, b);
  c.append(GateKind::U1, b, -1, {lambda / 2});
}

Circuit ripple_carry_adder(int n, std::uint64_t a, std::uint64_t b) {
  if (n < 4 || n % 2 != 0) throw CircuitError("adder requires even n >= 4");
  const int bits = (n - 2) / 2;
  const auto a_q = [](int i) { return 2 + 2 * i; };
  const auto b_q = [](int i) { return 1 + 2 * i; };
  const int carry_in = 0, carry_out = n - 1;

  Circuit c(n);
  for (int i = 0; i < bits; ++i) {
    if (a >> i & 1) c.x(a_q(i));
    if (b >> i & 1) c.x(b_q(i));
  }
  maj(c, carry_in, b_q(0), a_q(0));
  for (int i = 1; i < bits; ++i) maj(c, a_q(i - 1), b_q(i), a_q(i));
  c.cx(a_q(bits - 1), carry_out);
  for (int i = bits - 1; i >= 1; --i) uma(c, a_q(i - 1), b_q(i), a_q(i));
  uma(c, carry_in, b_q(0), a_q(0));
  return c;
}

Circuit approximate_qft(int n, int degree) {
  if (n < 1) throw CircuitError("aqft requires n >= 1");
  if (degree < 1) throw CircuitError("aqft degree must be >= 1");
  Circuit c(n);
  for (int i = 0; i < n; ++i) {
    c.h(i);
    for (int j = i + 1; j < n && j - i <= degree; ++j)
      append_controlled_phase(c, j, i, std::numbers::pi / std::ldexp(1.0, j - i));
  }
  return c;
}

Circuit bernstein_vazirani(int n, std::string_view hidden) {
  if (n < 2) throw CircuitError("bv requires n >= 2");
  if (static_cast<int>(hidden.size()) != n - 1)
    throw CircuitError("bv hidden string must have n-1 = " + std::to_string(n - 1) + " bits");
  const int target = n - 1;
  Circuit c(n);
  c.x(target);
  for (int q = 0; q < n; ++q) c.h(q);
  for (int i = 0; i < n - 1; ++i) {
    if (hidden[static_cast<std::size_t>(i)] == '1')
      c.cx(i, target);
    else if (hidden[static_cast<std::size_t>(i)] != '0')
      throw CircuitError("bv hidden string must contain only 0 and 1");
  }
  for (int q = 0; q < n; ++q) c.h(q);
  return c;
}

Circuit hardware_efficient_ansatz(int n, int layers, std::uint64_t seed) {
  if (n < 2) throw CircuitError("hwea requires n >= 2");
  if (layers < 1) throw CircuitError("hwea requires at least one layer");
  Rng rng(seed);
  Circuit c(n);
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n; ++q) {
      c.append(GateKind::RY, q, -1, {2 * std::numbers::pi * rng.uniform()});
      c.append(GateKind::RZ, q, -1, {2 * std::numbers::pi * rng.uniform()});
    }
    for (int q = 0; q + 1 < n; ++q) c.cx(q, q + 1);
  }
  return c;
}

Circuit supremacy_grid(int rows, int cols, int depth, std::uint64_t seed) {
  if (rows < 1 || cols < 1 || rows * cols < 2) throw CircuitError("supremacy grid needs at least 2 qubits");
  if (std::max(rows, cols) > 2 * std::min(rows, cols))
    throw CircuitError("supremacy grid must be near-square (long side at most twice the short side)");
  if (depth < 1) throw CircuitError("supremacy depth must be >= 1");

  const int n = rows * cols;
  const auto q = [cols](int r, int col) { return r * cols + col; };
  Rng rng(seed);
  Circuit c(n);
  for (int i = 0; i < n; ++i) c.h(i);

  // Single-qubit gate choices: T, RX(pi/2), RY(pi/2); -1 means none yet.
  std::vector<int> last(n, -1);
  for (int cycle = 0; cycle < depth; ++cycle) {
    const int pattern = cycle % 4;
    std::vector<bool> active(n, false);
    const auto couple = [&](int a, int b) {
      c.cz(a, b);
      active[a] = active[b] = true;
    };
    if (pattern < 2) {
      for (int r = 0; r < rows; ++r)
        for (int col = pattern; col + 1 < cols; col += 2) couple(q(r, col), q(r, col + 1));
    } else {
      for (int r = pattern - 2; r + 1 < rows; r += 2)
        for (int col = 0; col < cols; ++col) couple(q(r, col), q(r + 1, col));
    }
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      int pick = static_cast<int>(rng.below(last[i] < 0 ? 3 : 2));
      if (last[i] >= 0 && pick >= last[i]) ++pick;
      last[i] = pick;
      switch (pick) {
        case 0: c.append(GateKind::T, i); break;
        case 1: c.append(GateKind::RX, i, -1, {std::numbers::pi / 2}); break;
        default: c.append(GateKind::RY, i, -1, {std::numbers::pi / 2}); break;
      }
    }
  }
  return c;
}

Circuit gen(const GenSpec& spec) {
  switch (spec.family) {
    case Family::Adder: {
      if (spec.n < 4 || spec.n % 2 != 0) throw CircuitError("adder requires even n >= 4");
      const int bits = (spec.n - 2) / 2;
      const std::uint64_t range = std::uint64_t{1} << bits;
      Rng rng(spec.seed);
      const std::uint64_t a = spec.adder_a.value_or(rng.below(range));
      const std::uint64_t b = spec.adder_b.value_or(rng.below(range));
      if (a >= range || b >= range) throw CircuitError("adder inputs exceed the register size");
      return ripple_carry_adder(spec.n, a, b);
    }
    case Family::AQFT: {
      const int degree = spec.aqft_degree > 0
                             ? spec.aqft_degree
                             : static_cast<int>(std::ceil(std::log2(std::max(spec.n, 1)))) + 2;
      return approximate_qft(spec.n, degree);
    }
    case Family::BV: {
      if (spec.n < 2) throw CircuitError("bv requires n >= 2");
      const std::string hidden = spec.bv_hidden.empty() ? std::string(spec.n - 1, '1') : spec.bv_hidden;
      return bernstein_vazirani(spec.n, hidden);
    }
    case Family::HWEA:
      return hardware_efficient_ansatz(spec.n, spec.hwea_layers, spec.seed);
    case Family::Supremacy: {
      int rows = spec.rows, cols = spec.cols;
      if (rows == 0 && cols == 0) std::tie(rows, cols) = near_square(spec.n);
      if (rows * cols != spec.n)
        throw CircuitError("supremacy requires n = rows * cols (" + std::to_string(rows) + "x" +
                           std::to_string(cols) + " != " + std::to_string(spec.n) + ")");
      return supremacy_grid(rows, cols, spec.depth, spec.seed);
    }
  }
  throw CircuitError("unknown family");
}

}  // namespace qcut
