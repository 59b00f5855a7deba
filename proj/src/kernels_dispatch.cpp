#include "projreg/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace projreg::kernels {
namespace {

const Table* resolve() {
  std::string_view want = "auto";
  if (const char* env = std::getenv("PROJREG_KERNELS")) want = env;
  if (want == "scalar") return &scalar_table();
  if (want == "avx2") {
    if (const Table* t = avx2_table()) return t;
    return &scalar_table();
  }
  if (want == "neon") {
    if (const Table* t = neon_table()) return t;
    return &scalar_table();
  }
  if (const Table* t = avx2_table()) return t;
  if (const Table* t = neon_table()) return t;
  return &scalar_table();
}

}  // namespace

const Table& active() noexcept {
  static const Table* chosen = resolve();
  return *chosen;
}

}  // namespace projreg::kernels
