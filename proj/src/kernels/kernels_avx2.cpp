#include "speclearn/kernels.hpp"

// This translation unit is compiled with -mavx2 -mfma on x86-64. Nothing in
// it may run unless the dispatcher confirmed CPU support at runtime.

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace speclearn::kernels {

namespace {

// One __m256d holds two complex doubles laid out [re0, im0, re1, im1].

inline __m256d cmul(__m256d a, __m256d b) {
  __m256d b_re = _mm256_movedup_pd(b);
  __m256d b_im = _mm256_permute_pd(b, 0xF);
  __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

// conj(a) * b
inline __m256d cmul_conj(__m256d a, __m256d b) {
  __m256d b_re = _mm256_movedup_pd(b);
  __m256d b_im = _mm256_permute_pd(b, 0xF);
  __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmsubadd_pd(a_sw, b_im, _mm256_mul_pd(a, b_re));
}

inline cplx reduce_pair(__m256d acc) {
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  return {buf[0] + buf[2], buf[1] + buf[3]};
}

cplx cdotu_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + k));
    __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + k));
    acc = _mm256_add_pd(acc, cmul(va, vb));
  }
  cplx r = reduce_pair(acc);
  for (; k < n; ++k) r += a[k] * b[k];
  return r;
}

cplx cdotc_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + k));
    __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + k));
    acc = _mm256_add_pd(acc, cmul_conj(va, vb));
  }
  cplx r = reduce_pair(acc);
  for (; k < n; ++k) r += std::conj(a[k]) * b[k];
  return r;
}

void caxpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  __m256d a_re = _mm256_set1_pd(alpha.real());
  __m256d a_im = _mm256_set1_pd(alpha.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + k));
    __m256d vy = _mm256_loadu_pd(reinterpret_cast<double*>(y + k));
    __m256d x_sw = _mm256_permute_pd(vx, 0x5);
    __m256d prod = _mm256_fmaddsub_pd(vx, a_re, _mm256_mul_pd(x_sw, a_im));
    _mm256_storeu_pd(reinterpret_cast<double*>(y + k), _mm256_add_pd(vy, prod));
  }
  for (; k < n; ++k) y[k] += alpha * x[k];
}

void caxpy_conj_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  __m256d a_re = _mm256_set1_pd(alpha.real());
  __m256d a_im = _mm256_set1_pd(alpha.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + k));
    __m256d vy = _mm256_loadu_pd(reinterpret_cast<double*>(y + k));
    __m256d x_sw = _mm256_permute_pd(vx, 0x5);
    __m256d prod = _mm256_fmsubadd_pd(x_sw, a_im, _mm256_mul_pd(vx, a_re));
    _mm256_storeu_pd(reinterpret_cast<double*>(y + k), _mm256_add_pd(vy, prod));
  }
  for (; k < n; ++k) y[k] += alpha * std::conj(x[k]);
}

void chadamard_avx2(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + k));
    __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + k));
    _mm256_storeu_pd(reinterpret_cast<double*>(out + k), cmul(va, vb));
  }
  for (; k < n; ++k) out[k] = a[k] * b[k];
}

double sqnorm_avx2(const cplx* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + k));
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  double r = buf[0] + buf[1] + buf[2] + buf[3];
  for (; k < n; ++k)
    r += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
  return r;
}

}  // namespace

const Table* avx2_table() {
  static const Table t = {cdotu_avx2,     cdotc_avx2, caxpy_avx2,
                          caxpy_conj_avx2, chadamard_avx2, sqnorm_avx2,
                          "avx2"};
  return &t;
}

}  // namespace speclearn::kernels

#else

namespace speclearn::kernels {
const Table* avx2_table() { return nullptr; }
}  // namespace speclearn::kernels

#endif
