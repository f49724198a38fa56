#ifndef PENDANTSS_SIGNAL_MODEL_HPP
#define PENDANTSS_SIGNAL_MODEL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "pendantss/types.hpp"

namespace pendantss {

// Parameters of one synthetic dataset draw: a sparse spike train convolved
// with a short Gaussian kernel, plus a smooth trend and white noise.
struct DatasetSpec {
  int n_samples = 200;
  int kernel_len = 21;
  double kernel_sigma = 0.15;  // std of the Gaussian on u = linspace(-1,1,L)
  int n_spikes = 10;
  double noise_frac = 0.005;  // noise std as a fraction of max(kernel * spikes)
  std::uint64_t seed = 0;
  double amplitude_low = 1.0;
  double amplitude_high = 10.0;
  int min_separation = 5;

  void validate() const;
};

struct GroundTruth {
  Signal spikes;
  Kernel kernel;
  Signal trend;
  double noise_sigma = 0.0;  // fraction of x_max, mirrors DatasetSpec
  std::vector<int> support;  // indices with spikes[n] != 0
};

// "same"-mode linear convolution with zero padding, center-aligned so that a
// centered unit-impulse kernel is the identity. Requires L odd and L <= N.
Signal convolve_same(const Signal& s, const Kernel& k);

// Adjoint of s -> k*s: returns C_k^T r.
Signal convolve_adjoint_signal(const Signal& r, const Kernel& k);

// Adjoint of pi -> pi*s (s fixed): returns D_s^T r, a kernel-shaped vector.
Kernel convolve_adjoint_kernel(const Signal& r, const Signal& s, int kernel_len);

// Gaussian kernel evaluated on u = linspace(-1, 1, L), normalized to sum 1.
Kernel gaussian_kernel(int len, double sigma);

// Draws spikes/kernel/trend deterministically from spec.seed and assembles
// the observation y = kernel*spikes + trend + noise with the same seed.
std::pair<GroundTruth, Signal> generate_dataset(const DatasetSpec& spec);

// Rebuilds the observation from a fixed ground truth with an independent
// noise stream; noise_seed = spec.seed reproduces generate_dataset exactly.
Signal assemble_observation(const GroundTruth& truth, std::uint64_t noise_seed);

}  // namespace pendantss

#endif
