#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qcut/evaluator.hpp"

namespace qcut {

/// On-disk distribution store: one little-endian float64 file per entry plus
/// `index.json` = {"entries": [{"key", "file", "length"}, ...]}.
struct SpillEntry {
  std::string key;
  std::vector<double> values;
};

void write_spill(const std::filesystem::path& dir, const std::vector<SpillEntry>& entries);
std::vector<SpillEntry> read_spill(const std::filesystem::path& dir);

/// Key "fragment=<f>;<assignment>" for each raw variant distribution.
std::vector<SpillEntry> spill_entries(const std::vector<FragmentResults>& results);

}  // namespace qcut
