#include <chrono>
#include <cstdio>
#include <regex>
#include <stdexcept>

#include "json.hpp"
#include "qcut/bench.hpp"

namespace qcut {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void check_plan_laws(const CutPlan& plan, int source_width, std::size_t variants) {
  if (plan.total_width() != source_width + plan.num_cuts())
    throw std::logic_error("width identity violated: " + std::to_string(plan.total_width()) + " != " +
                           std::to_string(source_width) + " + " + std::to_string(plan.num_cuts()));
  std::size_t expected = 0;
  for (const auto& s : plan.subcircuits) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < s.upstream.size(); ++i) count *= 3;
    for (std::size_t i = 0; i < s.downstream.size(); ++i) count *= 4;
    expected += count;
  }
  if (variants != expected) throw std::logic_error("variant-count law violated");
}

}  // namespace

CutPathResult run_cut_path(const CutPlan& plan, const EvalOptions& eval) {
  CutPathResult out;
  out.plan = plan;

  auto t0 = Clock::now();
  out.raw = evaluate_all(plan.subcircuits, eval);
  out.timings.eval_ms = ms_since(t0);
  for (const auto& fr : out.raw) out.variants += fr.raw.size();

  int source_width = 0;
  for (const auto& s : plan.subcircuits) source_width += s.effective_count();
  check_plan_laws(plan, source_width, out.variants);

  t0 = Clock::now();
  const auto attributed = attribute_all(plan.subcircuits, out.raw);
  out.timings.attr_ms = ms_since(t0);

  t0 = Clock::now();
  out.reconstructed = reconstruct(plan, attributed);
  out.timings.recon_ms = ms_since(t0);
  return out;
}

CutPathResult run_cut_path(const Circuit& c, const CutConstraints& constraints, const EvalOptions& eval) {
  const auto t0 = Clock::now();
  CutPlan plan = find_cuts(c, constraints);
  const double cut_ms = ms_since(t0);
  CutPathResult out = run_cut_path(plan, eval);
  if (out.plan.total_width() != c.width() + out.plan.num_cuts())
    throw std::logic_error("width identity violated against the source circuit");
  out.timings.cut_ms = cut_ms;
  return out;
}

bool BenchRecord::width_identity() const {
  int total = 0;
  for (const auto& f : fragments) total += f.width;
  return total == n + k;
}

std::string record_json(const BenchRecord& r) {
  nlohmann::ordered_json j;
  j["family"] = r.family;
  j["n"] = r.n;
  j["K"] = r.k;
  auto frags = nlohmann::ordered_json::array();
  for (const auto& f : r.fragments) frags.push_back({{"width", f.width}, {"effective", f.effective}});
  j["fragments"] = frags;
  j["variants"] = r.variants;
  j["timings_ms"] = {{"cut", r.timings.cut_ms},
                     {"evaluate", r.timings.eval_ms},
                     {"attribute", r.timings.attr_ms},
                     {"reconstruct", r.timings.recon_ms},
                     {"full_sim", r.timings.full_ms}};
  j["tvd"] = r.tvd;
  if (r.exchange) {
    j["exchange"] = nlohmann::ordered_json::parse(exchange_log_json(*r.exchange));
  } else {
    j["exchange"] = nullptr;
  }
  j["mem_gb"] = r.mem_gb;
  j["width_identity"] = r.width_identity();
  return j.dump(2);
}

BenchRecord record_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  BenchRecord r;
  r.family = j.at("family").get<std::string>();
  r.n = j.at("n").get<int>();
  r.k = j.at("K").get<int>();
  for (const auto& f : j.at("fragments")) r.fragments.push_back({f.at("width").get<int>(), f.at("effective").get<int>()});
  r.variants = j.at("variants").get<std::size_t>();
  const auto& t = j.at("timings_ms");
  r.timings = {t.at("cut").get<double>(), t.at("evaluate").get<double>(), t.at("attribute").get<double>(),
               t.at("reconstruct").get<double>(), t.at("full_sim").get<double>()};
  r.tvd = j.at("tvd").get<double>();
  if (j.contains("exchange") && !j["exchange"].is_null()) {
    const auto& e = j["exchange"];
    ExchangeLog log;
    log.nc = e.at("nc").get<int>();
    log.num_spaces = e.at("num_spaces").get<int>();
    log.chunk_transfers = e.at("chunk_transfers").get<std::uint64_t>();
    log.bytes_moved = e.at("bytes_moved").get<std::uint64_t>();
    log.swaps_inserted = e.at("swaps_inserted").get<int>();
    r.exchange = log;
  }
  r.mem_gb = j.at("mem_gb").get<double>();
  return r;
}

std::string report_csv_header() {
  return "family,n,K,frag_widths,effective,variants,t_cut_ms,t_eval_ms,t_attr_ms,t_recon_ms,t_full_ms,tvd,mem_gb,"
         "width_identity";
}

std::string report_csv_row(const BenchRecord& r) {
  std::string widths, effective;
  for (std::size_t i = 0; i < r.fragments.size(); ++i) {
    if (i) {
      widths += ';';
      effective += ';';
    }
    widths += std::to_string(r.fragments[i].width);
    effective += std::to_string(r.fragments[i].effective);
  }
  std::string row = r.family + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," + widths + "," +
                    effective + "," + std::to_string(r.variants);
  for (double t : {r.timings.cut_ms, r.timings.eval_ms, r.timings.attr_ms, r.timings.recon_ms, r.timings.full_ms})
    row += "," + fmt("%.3f", t);
  row += "," + fmt("%.3e", r.tvd) + "," + fmt("%.6g", r.mem_gb) + "," + (r.width_identity() ? "true" : "false");
  return row;
}

const std::vector<int>& memory_table_widths() {
  static const std::vector<int> widths{10, 12, 14, 15, 16, 18, 20, 22, 24, 25, 26, 28, 30, 32, 34};
  return widths;
}

std::string memory_csv() {
  std::string out = "width,mem_gb\n";
  for (int n : memory_table_widths()) out += std::to_string(n) + "," + fmt("%.6g", estimate_memory_gb(n)) + "\n";
  return out;
}

std::string family_from_source(const std::string& text) {
  static const std::regex re(R"(//\s*family=([a-z]+))");
  std::smatch m;
  if (std::regex_search(text, m, re)) return m[1];
  return "custom";
}

}  // namespace qcut
