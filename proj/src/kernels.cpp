#include "bufshuf/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace bufshuf::kernels {

#if defined(BUFSHUF_HAVE_AVX2)
const KernelTable& avx2_table_impl() noexcept;
#endif

const KernelTable* avx2_table() noexcept {
#if defined(BUFSHUF_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* initial_selection() noexcept {
  const char* env = std::getenv("BUFSHUF_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") return &scalar_table();
  if (const KernelTable* avx2 = avx2_table()) return avx2;
  return &scalar_table();
}

std::atomic<const KernelTable*>& selection() noexcept {
  static std::atomic<const KernelTable*> current{initial_selection()};
  return current;
}

}  // namespace

const KernelTable& active() noexcept { return *selection().load(std::memory_order_acquire); }

bool select(std::string_view name) noexcept {
  if (name == "scalar") {
    selection().store(&scalar_table(), std::memory_order_release);
    return true;
  }
  if (name == "avx2") {
    if (const KernelTable* avx2 = avx2_table()) {
      selection().store(avx2, std::memory_order_release);
      return true;
    }
  }
  return false;
}

}  // namespace bufshuf::kernels
