#include "speclearn/kernels.hpp"

namespace speclearn::kernels {

namespace {

cplx cdotu_scalar(const cplx* a, const cplx* b, std::size_t n) {
  cplx acc(0.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) acc += a[k] * b[k];
  return acc;
}

cplx cdotc_scalar(const cplx* a, const cplx* b, std::size_t n) {
  cplx acc(0.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) acc += std::conj(a[k]) * b[k];
  return acc;
}

void caxpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

void caxpy_conj_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * std::conj(x[k]);
}

void chadamard_scalar(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * b[k];
}

double sqnorm_scalar(const cplx* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    acc += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
  return acc;
}

}  // namespace

const Table& scalar_table() {
  static const Table t = {cdotu_scalar,     cdotc_scalar, caxpy_scalar,
                          caxpy_conj_scalar, chadamard_scalar, sqnorm_scalar,
                          "scalar"};
  return t;
}

}  // namespace speclearn::kernels
