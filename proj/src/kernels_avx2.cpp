// AVX2/FMA variants of the inner loops. Compiled with -mavx2 -mfma; only
// dispatched to after a runtime cpuid check (see kernels.cpp).

#include "pendantss/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#include <algorithm>

namespace pendantss {
namespace kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

double sum_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double total = hsum(acc);
  for (; i < n; ++i) total += a[i];
  return total;
}

void clamp_avx2(const double* a, std::size_t n, double lo, double hi,
                double* out) {
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(a + i);
    v = _mm256_min_pd(_mm256_max_pd(v, vlo), vhi);
    _mm256_storeu_pd(out + i, v);
  }
  for (; i < n; ++i) out[i] = std::min(std::max(a[i], lo), hi);
}

void conv_same_padded_avx2(const double* spad, std::size_t n, const double* k,
                           std::size_t l, double* out) {
  std::size_t t = 0;
  for (; t + 4 <= n; t += 4) {
    __m256d acc = _mm256_setzero_pd();
    const double* base = spad + t + l - 1;
    for (std::size_t j = 0; j < l; ++j) {
      __m256d w = _mm256_loadu_pd(base - j);
      acc = _mm256_fmadd_pd(_mm256_set1_pd(k[j]), w, acc);
    }
    _mm256_storeu_pd(out + t, acc);
  }
  for (; t < n; ++t) {
    double acc = 0.0;
    const double* w = spad + t + l - 1;
    for (std::size_t j = 0; j < l; ++j) acc += k[j] * w[-(std::ptrdiff_t)j];
    out[t] = acc;
  }
}

void matvec_avx2(const double* m, std::size_t rows, std::size_t cols,
                 const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_avx2(m + r * cols, x, cols);
}

}  // namespace

const Ops* avx2_ops_impl() {
  static const Ops ops = {dot_avx2,  sum_avx2,    clamp_avx2,
                          conv_same_padded_avx2, matvec_avx2, "avx2"};
  return &ops;
}

}  // namespace kernels
}  // namespace pendantss

#endif
