#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ink::kernels {

// Data-parallel inner loops shared by the truth-table evaluators and the
// dense simplex tableau. Each operation has a scalar reference kernel plus
// SIMD variants (AVX2 on x86-64, NEON on aarch64) selected once at runtime.
// SIMD variants must be bit-identical to the scalar reference; the
// equivalence suite in tests/test_kernels.cpp enforces this.

struct Backend {
  const char* name;

  // 64-bit word bitwise ops over n words (bit-sliced interpretation blocks).
  void (*band)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  void (*bor)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  void (*bnot)(std::uint64_t* dst, const std::uint64_t* a, std::size_t n);

  // Dense double-precision row ops (simplex pivoting).
  void (*axpy)(double* y, double a, const double* x, std::size_t n);  // y += a*x
  void (*scale)(double* x, double a, std::size_t n);                  // x *= a
};

extern const Backend scalar_backend;
#if defined(INK_HAVE_AVX2)
extern const Backend avx2_backend;
#endif
#if defined(INK_HAVE_NEON)
extern const Backend neon_backend;
#endif

/// The backend chosen for this process. Defaults to the widest ISA the CPU
/// supports; INKSTREAM_KERNELS=scalar|avx2|neon overrides.
const Backend& active();

/// Force a specific backend (tests, benchmarking). Throws on unknown or
/// unsupported names.
void select(const std::string& name);

/// All backends usable on this machine.
std::vector<const Backend*> available();

}  // namespace ink::kernels
