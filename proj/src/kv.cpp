#include "projreg/kv.hpp"

#include <fstream>

#include "projreg/errors.hpp"

namespace projreg {

void save_kv(const KvPairs& pairs, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  for (const auto& [key, value] : pairs) out << key << '=' << value << '\n';
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed: " + path.string());
  }
}

KvPairs load_kv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  KvPairs pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t pos = line.find('=');
    if (pos == std::string::npos) {
      throw Error(ErrorCode::IoError,
                  "bad line '" + line + "' in " + path.string());
    }
    pairs.emplace_back(line.substr(0, pos), line.substr(pos + 1));
  }
  return pairs;
}

const std::string* kv_find(const KvPairs& pairs, const std::string& key) {
  for (const auto& [k, v] : pairs) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::string& kv_get(const KvPairs& pairs, const std::string& key) {
  if (const std::string* v = kv_find(pairs, key)) return *v;
  throw Error(ErrorCode::IoError, "missing key '" + key + "'");
}

}  // namespace projreg
