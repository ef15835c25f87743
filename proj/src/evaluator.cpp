#include "qcut/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <thread>

namespace qcut {

namespace {

constexpr std::string_view kBasisName[] = {"Comp", "X", "Y"};
constexpr std::string_view kInitName[] = {"0", "1", "+", "+i"};

std::size_t pow_size(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

std::string to_string(const VariantAssignment& a) {
  std::string out = "up=";
  for (std::size_t i = 0; i < a.upstream.size(); ++i) {
    if (i) out += ',';
    out += kBasisName[static_cast<int>(a.upstream[i])];
  }
  out += ";down=";
  for (std::size_t i = 0; i < a.downstream.size(); ++i) {
    if (i) out += ',';
    out += kInitName[static_cast<int>(a.downstream[i])];
  }
  return out;
}

std::vector<VariantAssignment> enumerate_variants(const SubcircuitSpec& spec) {
  const std::size_t up = spec.upstream.size(), down = spec.downstream.size();
  const std::size_t count = pow_size(3, up) * pow_size(4, down);
  std::vector<VariantAssignment> out;
  out.reserve(count);
  for (std::size_t v = 0; v < count; ++v) {
    VariantAssignment a;
    a.upstream.resize(up);
    a.downstream.resize(down);
    std::size_t rest = v;
    for (std::size_t k = down; k-- > 0;) {
      a.downstream[k] = static_cast<InitState>(rest % 4);
      rest /= 4;
    }
    for (std::size_t k = up; k-- > 0;) {
      a.upstream[k] = static_cast<MeasureBasis>(rest % 3);
      rest /= 3;
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::size_t variant_index(const SubcircuitSpec& spec, const VariantAssignment& a) {
  if (a.upstream.size() != spec.upstream.size() || a.downstream.size() != spec.downstream.size())
    throw std::invalid_argument("assignment does not match the fragment's cuts");
  std::size_t idx = 0;
  for (MeasureBasis b : a.upstream) idx = idx * 3 + static_cast<std::size_t>(b);
  for (InitState s : a.downstream) idx = idx * 4 + static_cast<std::size_t>(s);
  return idx;
}

Circuit build_variant_circuit(const SubcircuitSpec& spec, const VariantAssignment& a) {
  if (a.upstream.size() != spec.upstream.size() || a.downstream.size() != spec.downstream.size())
    throw std::invalid_argument("assignment does not match the fragment's cuts");

  Circuit out(spec.width());
  for (std::size_t k = 0; k < a.downstream.size(); ++k) {
    const int q = spec.downstream[k].qubit;
    switch (a.downstream[k]) {
      case InitState::Zero: break;
      case InitState::One: out.append(GateKind::X, q); break;
      case InitState::Plus: out.append(GateKind::H, q); break;
      case InitState::PlusI:
        out.append(GateKind::H, q);
        out.append(GateKind::S, q);
        break;
    }
  }
  for (const Gate& g : spec.fragment.gates()) out.append(g);
  for (std::size_t k = 0; k < a.upstream.size(); ++k)
    out = apply_basis_rotation(out, spec.upstream[k].qubit, a.upstream[k]);
  return out;
}

int default_workers(std::size_t jobs) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<int>(std::max<std::size_t>(1, std::min<std::size_t>(hw, jobs)));
}

std::size_t total_variants(const std::vector<SubcircuitSpec>& specs) {
  std::size_t total = 0;
  for (const auto& s : specs) total += pow_size(3, s.upstream.size()) * pow_size(4, s.downstream.size());
  return total;
}

std::vector<FragmentResults> evaluate_all(const std::vector<SubcircuitSpec>& specs,
                                          const EvalOptions& options) {
  struct Job {
    int fragment;
    std::size_t variant;
  };
  std::vector<FragmentResults> results(specs.size());
  std::vector<Job> jobs;
  for (std::size_t f = 0; f < specs.size(); ++f) {
    results[f].variants = enumerate_variants(specs[f]);
    results[f].raw.resize(results[f].variants.size());
    for (std::size_t v = 0; v < results[f].variants.size(); ++v) jobs.push_back({static_cast<int>(f), v});
  }

  const int workers = options.workers > 0 ? options.workers : default_workers(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::size_t err_job = jobs.size();
  std::exception_ptr err;

  const auto work = [&] {
    const SimOptions sim{options.max_width, Backend::Serial};
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      const Job& job = jobs[j];
      try {
        const auto& spec = specs[job.fragment];
        const Circuit vc = build_variant_circuit(spec, results[job.fragment].variants[job.variant]);
        results[job.fragment].raw[job.variant] = probabilities(simulate(vc, sim), Backend::Serial);
      } catch (const std::exception& e) {
        std::lock_guard lock(err_mu);
        if (j < err_job) {
          err_job = j;
          err = std::make_exception_ptr(EvaluationError(job.fragment, job.variant, e.what()));
        }
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (err) std::rethrow_exception(err);
  return results;
}

std::vector<double> attribute(const SubcircuitSpec& spec, std::span<const Pauli> labels,
                              const ProbVector& raw) {
  const int width = spec.width();
  if (raw.m != width || raw.p.size() != (std::size_t{1} << width))
    throw std::invalid_argument("raw distribution has " + std::to_string(raw.p.size()) +
                                " entries, fragment needs 2^" + std::to_string(width));
  if (labels.size() != spec.upstream.size())
    throw std::invalid_argument("one Pauli label per upstream cut required");

  std::uint64_t sign_mask = 0;
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] != Pauli::I) sign_mask |= std::uint64_t{1} << spec.upstream[k].qubit;

  const auto& eff = spec.effective_qubits;
  std::vector<double> values(std::size_t{1} << eff.size(), 0.0);
  for (std::uint64_t idx = 0; idx < raw.p.size(); ++idx) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < eff.size(); ++j) out |= ((idx >> eff[j]) & 1u) << j;
    const bool negative = std::popcount(idx & sign_mask) & 1;
    values[out] += negative ? -raw.p[idx] : raw.p[idx];
  }
  return values;
}

std::vector<AttributedDistribution> attribute_shots(const SubcircuitSpec& spec, int fragment,
                                                    const VariantAssignment& a, const ProbVector& raw) {
  const std::size_t up = a.upstream.size();
  std::vector<std::size_t> comp_cuts;
  for (std::size_t k = 0; k < up; ++k)
    if (a.upstream[k] == MeasureBasis::Comp) comp_cuts.push_back(k);

  std::vector<AttributedDistribution> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << comp_cuts.size()); ++mask) {
    AttributedDistribution d;
    d.fragment = fragment;
    d.assignment = a;
    d.labels.resize(up);
    for (std::size_t k = 0; k < up; ++k)
      d.labels[k] = a.upstream[k] == MeasureBasis::X ? Pauli::X
                    : a.upstream[k] == MeasureBasis::Y ? Pauli::Y
                                                       : Pauli::I;
    for (std::size_t c = 0; c < comp_cuts.size(); ++c)
      if (mask >> c & 1) d.labels[comp_cuts[c]] = Pauli::Z;
    d.values = attribute(spec, d.labels, raw);
    out.push_back(std::move(d));
  }
  return out;
}

std::size_t AttributedFragment::key(std::span<const Pauli> labels, std::span<const InitState> inits) const {
  std::size_t k = 0, scale = 1;
  for (Pauli p : labels) {
    k += static_cast<std::size_t>(p) * scale;
    scale *= 4;
  }
  for (InitState s : inits) {
    k += static_cast<std::size_t>(s) * scale;
    scale *= 4;
  }
  return k;
}

const std::vector<double>& AttributedFragment::at(std::span<const Pauli> labels,
                                                  std::span<const InitState> inits) const {
  const std::size_t k = key(labels, inits);
  if (k >= table.size() || table[k].empty())
    throw std::out_of_range("missing attributed vector for variant key " + std::to_string(k));
  return table[k];
}

std::vector<AttributedFragment> attribute_all(const std::vector<SubcircuitSpec>& specs,
                                              const std::vector<FragmentResults>& results) {
  if (results.size() != specs.size()) throw std::invalid_argument("results do not match fragments");
  std::vector<AttributedFragment> out(specs.size());
  for (std::size_t f = 0; f < specs.size(); ++f) {
    AttributedFragment& af = out[f];
    af.up = static_cast<int>(specs[f].upstream.size());
    af.down = static_cast<int>(specs[f].downstream.size());
    af.table.resize(pow_size(4, af.up + af.down));
    for (std::size_t v = 0; v < results[f].variants.size(); ++v) {
      const auto& a = results[f].variants[v];
      for (auto& d : attribute_shots(specs[f], static_cast<int>(f), a, results[f].raw[v]))
        af.table[af.key(d.labels, a.downstream)] = std::move(d.values);
    }
  }
  return out;
}

}  // namespace qcut
