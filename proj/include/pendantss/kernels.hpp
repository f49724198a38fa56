#ifndef PENDANTSS_KERNELS_HPP
#define PENDANTSS_KERNELS_HPP

#include <cstddef>
#include <string_view>

namespace pendantss {
namespace kernels {

// Data-parallel inner loops shared by the convolution, filtering and
// projection layers. Each entry has a scalar reference implementation and,
// on x86-64 with AVX2, a vectorized variant. The backend is picked once at
// startup; set_backend() overrides it (used by the equivalence tests).
struct Ops {
  // sum_i a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i a[i]
  double (*sum)(const double* a, std::size_t n);
  // out[i] = min(max(a[i], lo), hi)
  void (*clamp)(const double* a, std::size_t n, double lo, double hi,
                double* out);
  // "same"-mode convolution over a pre-padded input.
  // spad has length n + l - 1 with the original signal at offset (l-1)/2;
  // out[t] = sum_j k[j] * spad[t + l - 1 - j], t = 0..n-1.
  void (*conv_same_padded)(const double* spad, std::size_t n, const double* k,
                           std::size_t l, double* out);
  // Dense row-major matrix times vector: y = M x, M is rows x cols.
  void (*matvec)(const double* m, std::size_t rows, std::size_t cols,
                 const double* x, double* y);
  const char* name;
};

const Ops& active();

// "auto", "scalar" or "avx2". Returns false when the requested backend is
// not available on this machine (the active backend is left unchanged).
bool set_backend(std::string_view name);

// Backends exposed for equivalence testing.
const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when unsupported at runtime

}  // namespace kernels
}  // namespace pendantss

#endif
