// qcut: generate benchmark circuits, cut and reconstruct them, run the
// chunk-blocked executor, and tabulate results.
//
// Exit codes: 0 success, 1 verification failed or nothing to report,
// 2 invalid input, 3 infeasible constraints, 4 statevector width limit.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcut/bench.hpp"
#include "qcut/generators.hpp"
#include "qcut/qasm.hpp"
#include "qcut/spill.hpp"

namespace fs = std::filesystem;
using namespace qcut;

namespace {

enum Exit { kOk = 0, kFailed = 1, kInvalid = 2, kInfeasible = 3, kWidthLimit = 4 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct GenerateArgs {
  std::string family;
  GenSpec spec;
  std::string out;
  std::int64_t a = -1, b = -1;
};

int cmd_generate(GenerateArgs& args) {
  const auto family = family_from_name(args.family);
  if (!family) {
    std::cerr << "unknown family '" << args.family << "'\n";
    return kInvalid;
  }
  args.spec.family = *family;
  if (args.a >= 0) args.spec.adder_a = static_cast<std::uint64_t>(args.a);
  if (args.b >= 0) args.spec.adder_b = static_cast<std::uint64_t>(args.b);
  const Circuit c = gen(args.spec);
  emit(args.out, "// family=" + args.family + " n=" + std::to_string(args.spec.n) +
                     " seed=" + std::to_string(args.spec.seed) + "\n" + serialize_circuit(c));
  return kOk;
}

struct CutArgs {
  std::string circuit;
  CutConstraints constraints{INT_MAX, 5, 10};
  std::string out;
};

int cmd_cut(const CutArgs& args) {
  const Circuit c = parse_circuit(read_file(args.circuit));
  emit(args.out, cut_plan_json(find_cuts(c, args.constraints)) + "\n");
  return kOk;
}

struct CompareArgs {
  std::string circuit;
  CutConstraints constraints{INT_MAX, 5, 10};
  int workers = 0;
  int max_sim_width = 28;
  double tvd_tol = 1e-6;
  std::string out;
  std::string spill;
};

int cmd_compare(const CompareArgs& args) {
  const std::string text = read_file(args.circuit);
  const Circuit c = parse_circuit(text);
  if (c.width() > args.max_sim_width)
    throw WidthLimitError("circuit width " + std::to_string(c.width()) + " exceeds statevector limit " +
                          std::to_string(args.max_sim_width));

  EvalOptions eval;
  eval.workers = args.workers;
  eval.max_width = args.max_sim_width;
  const CutPathResult cut = run_cut_path(c, args.constraints, eval);

  const auto t0 = std::chrono::steady_clock::now();
  const ProbVector full = probabilities(simulate(c, {args.max_sim_width, Backend::OpenMP}));
  const double full_ms = elapsed_ms(t0);

  BenchRecord rec;
  rec.family = family_from_source(text);
  rec.n = c.width();
  rec.k = cut.plan.num_cuts();
  for (const auto& s : cut.plan.subcircuits) rec.fragments.push_back({s.width(), s.effective_count()});
  rec.variants = cut.variants;
  rec.timings = cut.timings;
  rec.timings.full_ms = full_ms;
  rec.tvd = total_variation_distance(cut.reconstructed, full);
  rec.mem_gb = estimate_memory_gb(c.width());

  if (!args.spill.empty()) {
    write_spill(fs::path(args.spill) / "variants", spill_entries(cut.raw));
    write_spill(fs::path(args.spill) / "reconstructed", {{"reconstructed", cut.reconstructed.p}});
  }
  emit(args.out, record_json(rec) + "\n");
  if (rec.tvd > args.tvd_tol) {
    std::cerr << "tvd " << rec.tvd << " exceeds tolerance " << args.tvd_tol << "\n";
    return kFailed;
  }
  return kOk;
}

struct BlockedArgs {
  std::string circuit;
  int nc = 0;
  int spaces = 1;
  double tvd_tol = 1e-9;
  double amp_tol = 1e-12;
  std::string out;
};

int cmd_blocked(const BlockedArgs& args) {
  const Circuit c = parse_circuit(read_file(args.circuit));
  const ChunkedResult res = chunked_simulate(c, args.nc, args.spaces);
  const ProbVector naive = probabilities(simulate(c));
  double max_abs = 0;
  for (std::size_t i = 0; i < naive.p.size(); ++i) max_abs = std::max(max_abs, std::abs(naive.p[i] - res.probs.p[i]));
  const double tvd = total_variation_distance(res.probs, naive);

  nlohmann::ordered_json j;
  j["exchange"] = nlohmann::ordered_json::parse(exchange_log_json(res.log));
  j["tvd"] = tvd;
  j["max_abs_diff"] = max_abs;
  j["peak_bytes_per_space"] = res.peak_bytes_per_space;
  emit(args.out, j.dump(2) + "\n");
  if (tvd > args.tvd_tol) {
    std::cerr << "tvd " << tvd << " exceeds tolerance " << args.tvd_tol << "\n";
    return kFailed;
  }
  if (max_abs > args.amp_tol) std::cerr << "warning: max probability difference " << max_abs << " above --amp-tol\n";
  return kOk;
}

struct ReportArgs {
  std::string records;
  std::string out;
  std::string mem_out;
};

int cmd_report(const ReportArgs& args) {
  std::vector<fs::path> files;
  if (fs::is_directory(args.records))
    for (const auto& e : fs::directory_iterator(args.records))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::vector<BenchRecord> records;
  for (const auto& f : files) {
    try {
      records.push_back(record_from_json(read_file(f.string())));
    } catch (const std::exception& e) {
      std::cerr << "warning: skipping " << f.string() << ": " << e.what() << "\n";
    }
  }
  if (records.empty()) {
    std::cerr << "no readable records in " << args.records << "\n";
    return kFailed;
  }
  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.family, a.n, a.k) < std::tie(b.family, b.n, b.k);
  });

  std::string csv = report_csv_header() + "\n";
  int large = 0, full_faster = 0;
  for (const auto& r : records) {
    csv += report_csv_row(r) + "\n";
    if (r.n >= 10) {
      ++large;
      if (r.timings.full_ms < r.timings.cut_path_ms()) ++full_faster;
    }
  }
  emit(args.out, csv);

  std::string mem_out = args.mem_out;
  if (mem_out.empty() && !args.out.empty()) {
    fs::path p(args.out);
    mem_out = (p.parent_path() / (p.stem().string() + "_memory.csv")).string();
  }
  if (!mem_out.empty()) emit(mem_out, memory_csv());
  std::cerr << "full simulation faster than cut path in " << full_faster << " of " << large
            << " records with n >= 10\n";
  return kOk;
}

int cmd_estimate_memory(const std::vector<int>& widths) {
  if (widths.empty()) {
    std::cout << memory_csv();
    return kOk;
  }
  std::cout << "width,mem_gb\n";
  for (int n : widths) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", estimate_memory_gb(n));
    std::cout << n << "," << buf << "\n";
  }
  return kOk;
}

void add_constraints(CLI::App* cmd, CutConstraints& c) {
  cmd->add_option("--max-width", c.max_width, "Widest allowed subcircuit")->required();
  cmd->add_option("--max-cuts", c.max_cuts, "Cut budget")->capture_default_str();
  cmd->add_option("--max-subcircuits", c.max_subcircuits, "Subcircuit budget")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circuit cutting and cache-blocked statevector benchmarks"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* generate = app.add_subcommand("generate", "Write a benchmark circuit");
  generate->add_option("--family", gen_args.family, "adder|aqft|bv|hwea|supremacy")->required();
  generate->add_option("--n", gen_args.spec.n, "Qubit count")->required();
  generate->add_option("--seed", gen_args.spec.seed, "PRNG seed");
  generate->add_option("--out", gen_args.out, "Output file (default stdout)");
  generate->add_option("--degree", gen_args.spec.aqft_degree, "AQFT approximation degree");
  generate->add_option("--layers", gen_args.spec.hwea_layers, "HWEA layer count");
  generate->add_option("--hidden", gen_args.spec.bv_hidden, "BV hidden string (n-1 bits)");
  generate->add_option("--rows", gen_args.spec.rows, "Supremacy grid rows");
  generate->add_option("--cols", gen_args.spec.cols, "Supremacy grid columns");
  generate->add_option("--depth", gen_args.spec.depth, "Supremacy cycles");
  generate->add_option("--a", gen_args.a, "Adder input a");
  generate->add_option("--b", gen_args.b, "Adder input b");

  CutArgs cut_args;
  auto* cut = app.add_subcommand("cut", "Find a cut plan and print it as JSON");
  cut->add_option("--circuit", cut_args.circuit)->required();
  add_constraints(cut, cut_args.constraints);
  cut->add_option("--out", cut_args.out);

  CompareArgs cmp_args;
  auto* compare = app.add_subcommand("compare", "Run cut path and full simulation, write a record");
  compare->add_option("--circuit", cmp_args.circuit)->required();
  add_constraints(compare, cmp_args.constraints);
  compare->add_option("--workers", cmp_args.workers, "Variant worker threads (0: auto)");
  compare->add_option("--max-sim-width", cmp_args.max_sim_width)->capture_default_str();
  compare->add_option("--tvd-tol", cmp_args.tvd_tol)->capture_default_str();
  compare->add_option("--out", cmp_args.out);
  compare->add_option("--spill", cmp_args.spill, "Directory for variant and reconstructed distributions");

  BlockedArgs blk_args;
  auto* blocked = app.add_subcommand("blocked", "Chunk-blocked simulation with exchange accounting");
  blocked->add_option("--circuit", blk_args.circuit)->required();
  blocked->add_option("--nc", blk_args.nc, "Qubits per chunk")->required();
  blocked->add_option("--spaces", blk_args.spaces, "Memory spaces")->capture_default_str();
  blocked->add_option("--tvd-tol", blk_args.tvd_tol)->capture_default_str();
  blocked->add_option("--amp-tol", blk_args.amp_tol)->capture_default_str();
  blocked->add_option("--out", blk_args.out);

  ReportArgs rep_args;
  auto* report = app.add_subcommand("report", "Tabulate record JSON files as CSV");
  report->add_option("--records", rep_args.records)->required();
  report->add_option("--out", rep_args.out);
  report->add_option("--mem-out", rep_args.mem_out, "Memory table CSV (default <out>_memory.csv)");

  std::vector<int> mem_widths;
  auto* estimate = app.add_subcommand("estimate-memory", "Statevector memory in GB per width");
  estimate->add_option("--n", mem_widths, "Widths (default: the standard table)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*generate) return cmd_generate(gen_args);
    if (*cut) return cmd_cut(cut_args);
    if (*compare) return cmd_compare(cmp_args);
    if (*blocked) return cmd_blocked(blk_args);
    if (*report) return cmd_report(rep_args);
    if (*estimate) return cmd_estimate_memory(mem_widths);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const WidthLimitError& e) {
    std::cerr << "width limit: " << e.what() << "\n";
    return kWidthLimit;
  } catch (const EvaluationError& e) {
    std::cerr << "evaluation failed: " << e.what() << "\n";
    return std::string(e.what()).find("exceeds statevector limit") != std::string::npos ? kWidthLimit : kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
