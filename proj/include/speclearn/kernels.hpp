#pragma once

// Complex double-precision vector kernels used by the hot loops (network
// forward passes, loss gradients, Gram matrices). A scalar reference
// implementation always exists; an AVX2+FMA variant is selected at runtime
// when the CPU supports it. Set SPECLEARN_KERNEL=scalar|avx2 to override.

#include <complex>
#include <cstddef>

namespace speclearn::kernels {

using cplx = std::complex<double>;

struct Table {
  // sum_k a[k] * b[k]
  cplx (*cdotu)(const cplx* a, const cplx* b, std::size_t n);
  // sum_k conj(a[k]) * b[k]
  cplx (*cdotc)(const cplx* a, const cplx* b, std::size_t n);
  // y[k] += alpha * x[k]
  void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // y[k] += alpha * conj(x[k])
  void (*caxpy_conj)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // out[k] = a[k] * b[k]
  void (*chadamard)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // sum_k |a[k]|^2
  double (*sqnorm)(const cplx* a, std::size_t n);
  const char* name;
};

// Portable reference implementation.
const Table& scalar_table();

// AVX2+FMA implementation, or nullptr when the CPU (or build) lacks support.
const Table* avx2_table();

// The dispatch result used by the rest of the library. Resolved once, on
// first use; honours the SPECLEARN_KERNEL environment variable.
const Table& active();

}  // namespace speclearn::kernels
