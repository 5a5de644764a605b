#include "ink/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "ink/errors.hpp"

namespace ink::kernels {
namespace {

const Backend* detect_default() {
#if defined(INK_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return &avx2_backend;
#endif
#if defined(INK_HAVE_NEON)
  return &neon_backend;
#endif
  return &scalar_backend;
}

const Backend* initial_backend() {
  if (const char* env = std::getenv("INKSTREAM_KERNELS")) {
    for (const Backend* b : available()) {
      if (std::strcmp(b->name, env) == 0) return b;
    }
    // unknown or unsupported name in the environment: fall through to detection
  }
  return detect_default();
}

std::atomic<const Backend*>& slot() {
  static std::atomic<const Backend*> current{initial_backend()};
  return current;
}

}  // namespace

const Backend& active() { return *slot().load(std::memory_order_relaxed); }

void select(const std::string& name) {
  for (const Backend* b : available()) {
    if (name == b->name) {
      slot().store(b, std::memory_order_relaxed);
      return;
    }
  }
  throw InvalidArgumentError("unknown or unsupported kernel backend: " + name);
}

std::vector<const Backend*> available() {
  std::vector<const Backend*> out{&scalar_backend};
#if defined(INK_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) out.push_back(&avx2_backend);
#endif
#if defined(INK_HAVE_NEON)
  out.push_back(&neon_backend);
#endif
  return out;
}

}  // namespace ink::kernels
