#include "pendantss/kernels.hpp"

#include <algorithm>

namespace pendantss {
namespace kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc0 += a[i] * b[i];
    acc1 += a[i + 1] * b[i + 1];
  }
  if (i < n) acc0 += a[i] * b[i];
  return acc0 + acc1;
}

double sum_scalar(const double* a, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc0 += a[i];
    acc1 += a[i + 1];
  }
  if (i < n) acc0 += a[i];
  return acc0 + acc1;
}

void clamp_scalar(const double* a, std::size_t n, double lo, double hi,
                  double* out) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::min(std::max(a[i], lo), hi);
}

void conv_same_padded_scalar(const double* spad, std::size_t n,
                             const double* k, std::size_t l, double* out) {
  for (std::size_t t = 0; t < n; ++t) {
    double acc = 0.0;
    const double* w = spad + t + l - 1;
    for (std::size_t j = 0; j < l; ++j) acc += k[j] * w[-(std::ptrdiff_t)j];
    out[t] = acc;
  }
}

void matvec_scalar(const double* m, std::size_t rows, std::size_t cols,
                   const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = dot_scalar(m + r * cols, x, cols);
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {dot_scalar,  sum_scalar,    clamp_scalar,
                          conv_same_padded_scalar, matvec_scalar, "scalar"};
  return ops;
}

}  // namespace kernels
}  // namespace pendantss
