#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace projreg {

/// Line-oriented `key=value` text used by every on-disk `meta` file and
/// diagnostics report. Order-preserving so output is deterministic.
using KvPairs = std::vector<std::pair<std::string, std::string>>;

void save_kv(const KvPairs& pairs, const std::filesystem::path& path);
KvPairs load_kv(const std::filesystem::path& path);

const std::string& kv_get(const KvPairs& pairs, const std::string& key);
const std::string* kv_find(const KvPairs& pairs, const std::string& key);

}  // namespace projreg
