#include "qcut/reconstructor.hpp"

#include <cmath>
#include <stdexcept>

namespace qcut {

namespace {

struct Weighted {
  int choice;
  double coeff;
};

// Upstream: which Pauli labels, with what sign, make up term i.
std::vector<Weighted> upstream_rule(int term) {
  switch (term) {
    case 1: return {{static_cast<int>(Pauli::I), 1.0}, {static_cast<int>(Pauli::Z), 1.0}};
    case 2: return {{static_cast<int>(Pauli::I), 1.0}, {static_cast<int>(Pauli::Z), -1.0}};
    case 3: return {{static_cast<int>(Pauli::X), 1.0}};
    case 4: return {{static_cast<int>(Pauli::Y), 1.0}};
  }
  throw std::invalid_argument("term index must be in 1..4");
}

std::vector<Weighted> downstream_rule(int term) {
  constexpr int zero = static_cast<int>(InitState::Zero), one = static_cast<int>(InitState::One);
  switch (term) {
    case 1: return {{zero, 1.0}};
    case 2: return {{one, 1.0}};
    case 3: return {{static_cast<int>(InitState::Plus), 2.0}, {zero, -1.0}, {one, -1.0}};
    case 4: return {{static_cast<int>(InitState::PlusI), 2.0}, {zero, -1.0}, {one, -1.0}};
  }
  throw std::invalid_argument("term index must be in 1..4");
}

// out[hi * lo.size() + l] = hi[h] * lo[l]
std::vector<double> kron(const std::vector<double>& hi, const std::vector<double>& lo) {
  std::vector<double> out(hi.size() * lo.size());
  for (std::size_t h = 0; h < hi.size(); ++h)
    for (std::size_t l = 0; l < lo.size(); ++l) out[h * lo.size() + l] = hi[h] * lo[l];
  return out;
}

}  // namespace

std::vector<double> fragment_term(const SubcircuitSpec& spec, std::span<const int> upstream_terms,
                                  std::span<const int> downstream_terms, const AttributedFragment& attributed) {
  if (upstream_terms.size() != spec.upstream.size() || downstream_terms.size() != spec.downstream.size())
    throw std::invalid_argument("term indices do not match the fragment's cuts");

  std::vector<std::vector<Weighted>> rules;
  for (int t : upstream_terms) rules.push_back(upstream_rule(t));
  for (int t : downstream_terms) rules.push_back(downstream_rule(t));

  const std::size_t up = upstream_terms.size();
  std::vector<double> out(std::size_t{1} << spec.effective_count(), 0.0);
  std::vector<std::size_t> pick(rules.size(), 0);
  std::vector<Pauli> labels(up);
  std::vector<InitState> inits(downstream_terms.size());
  for (;;) {
    double coeff = 1.0;
    for (std::size_t r = 0; r < rules.size(); ++r) {
      const Weighted& w = rules[r][pick[r]];
      coeff *= w.coeff;
      if (r < up)
        labels[r] = static_cast<Pauli>(w.choice);
      else
        inits[r - up] = static_cast<InitState>(w.choice);
    }
    const auto& v = attributed.at(labels, inits);
    if (v.size() != out.size()) throw std::invalid_argument("attributed vector has the wrong length");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coeff * v[i];

    std::size_t r = rules.size();
    while (r > 0 && ++pick[r - 1] == rules[r - 1].size()) pick[--r] = 0;
    if (r == 0) break;
  }
  return out;
}

std::vector<double> fragment_term(const SubcircuitSpec& spec, const TermIndex& term,
                                  const AttributedFragment& attributed) {
  std::vector<int> up, down;
  for (const auto& r : spec.upstream) up.push_back(term.at(r.cut));
  for (const auto& r : spec.downstream) down.push_back(term.at(r.cut));
  return fragment_term(spec, up, down, attributed);
}

ProbVector reconstruct(const CutPlan& plan, const std::vector<AttributedFragment>& attributed) {
  const auto& specs = plan.subcircuits;
  if (attributed.size() != specs.size()) throw std::invalid_argument("attributed results incomplete");
  const int k = plan.num_cuts();

  // Fragment f's effective qubits occupy concatenated positions offset_f...
  std::vector<int> wire_of_position;
  for (const auto& s : specs)
    for (int q : s.effective_qubits) wire_of_position.push_back(s.output_map[q]);
  const int n = static_cast<int>(wire_of_position.size());
  std::vector<bool> seen(n, false);
  for (int w : wire_of_position) {
    if (w < 0 || w >= n || seen[w]) throw std::invalid_argument("output maps do not cover the circuit");
    seen[w] = true;
  }

  const std::size_t terms = std::size_t{1} << (2 * k);
  const std::size_t dim = std::size_t{1} << n;

  // Fixed partition of the term range into blocks, reduced pairwise in index
  // order so the sum does not depend on the thread count.
  const std::size_t blocks = std::min<std::size_t>(terms, 8);
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(dim, 0.0));
  std::exception_ptr err;
#pragma omp parallel for schedule(static, 1)
  for (std::size_t b = 0; b < blocks; ++b) {
    try {
      TermIndex term(k);
      for (std::size_t t = b * terms / blocks; t < (b + 1) * terms / blocks; ++t) {
        for (int c = 0; c < k; ++c) term[c] = static_cast<int>((t >> (2 * c)) & 3) + 1;
        std::vector<double> prod{1.0};
        for (std::size_t f = 0; f < specs.size(); ++f)
          prod = kron(fragment_term(specs[f], term, attributed[f]), prod);
        auto& acc = partial[b];
        for (std::size_t i = 0; i < dim; ++i) acc[i] += prod[i];
      }
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  for (std::size_t stride = 1; stride < blocks; stride *= 2)
    for (std::size_t b = 0; b + stride < blocks; b += 2 * stride)
      for (std::size_t i = 0; i < dim; ++i) partial[b][i] += partial[b + stride][i];

  const double scale = std::ldexp(1.0, -k);
  ProbVector out;
  out.m = n;
  out.p.assign(dim, 0.0);
  const auto& acc = partial[0];
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t orig = 0;
    for (int pos = 0; pos < n; ++pos) orig |= ((idx >> pos) & 1u) << wire_of_position[pos];
    out.p[orig] = acc[idx] * scale;
  }
  return out;
}

double total_variation_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("distributions differ in length");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return acc / 2;
}

}  // namespace qcut
