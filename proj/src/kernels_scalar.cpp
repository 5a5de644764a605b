#include "ink/kernels.hpp"

namespace ink::kernels {
namespace {

void band_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

void bor_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] | b[i];
}

void bnot_scalar(std::uint64_t* dst, const std::uint64_t* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = ~a[i];
}

void axpy_scalar(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scale_scalar(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] * a;
}

}  // namespace

const Backend scalar_backend = {"scalar", band_scalar, bor_scalar, bnot_scalar, axpy_scalar, scale_scalar};

}  // namespace ink::kernels
