#include <atomic>
#include <cstdlib>
#include <string_view>

#include "infocomb/kernels.hpp"

namespace infocomb::kernels {

namespace {

const KernelTable* detect() {
  if (const char* env = std::getenv("INFOCOMB_KERNELS")) {
    std::string_view want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2" && avx2_table()) return avx2_table();
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelTable* t = nullptr;
  if (name == "scalar") t = &scalar_table();
  if (name == "avx2") t = avx2_table();
  if (!t) return false;
  current().store(t, std::memory_order_release);
  return true;
}

}  // namespace infocomb::kernels
