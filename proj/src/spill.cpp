#include "qcut/spill.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qcut {

namespace fs = std::filesystem;

void write_spill(const fs::path& dir, const std::vector<SpillEntry>& entries) {
  fs::create_directories(dir);
  nlohmann::ordered_json index;
  index["entries"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string file = "d" + std::to_string(i) + ".bin";
    std::ofstream out(dir / file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / file).string());
    for (double v : entries[i].values) {
      auto bits = std::bit_cast<std::uint64_t>(v);
      char bytes[8];
      for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
      out.write(bytes, 8);
    }
    index["entries"].push_back({{"key", entries[i].key}, {"file", file}, {"length", entries[i].values.size()}});
  }
  std::ofstream(dir / "index.json") << index.dump(2) << '\n';
}

std::vector<SpillEntry> read_spill(const fs::path& dir) {
  std::ifstream in(dir / "index.json");
  if (!in) throw std::runtime_error("missing " + (dir / "index.json").string());
  const auto index = nlohmann::json::parse(in);
  std::vector<SpillEntry> out;
  for (const auto& e : index.at("entries")) {
    SpillEntry entry;
    entry.key = e.at("key").get<std::string>();
    const auto length = e.at("length").get<std::size_t>();
    std::ifstream data(dir / e.at("file").get<std::string>(), std::ios::binary);
    entry.values.resize(length);
    for (auto& v : entry.values) {
      unsigned char bytes[8];
      if (!data.read(reinterpret_cast<char*>(bytes), 8)) throw std::runtime_error("truncated spill file for " + entry.key);
      std::uint64_t bits = 0;
      for (int b = 0; b < 8; ++b) bits |= std::uint64_t{bytes[b]} << (8 * b);
      v = std::bit_cast<double>(bits);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<SpillEntry> spill_entries(const std::vector<FragmentResults>& results) {
  std::vector<SpillEntry> out;
  for (std::size_t f = 0; f < results.size(); ++f)
    for (std::size_t v = 0; v < results[f].variants.size(); ++v)
      out.push_back({"fragment=" + std::to_string(f) + ";" + to_string(results[f].variants[v]), results[f].raw[v].p});
  return out;
}

}  // namespace qcut
