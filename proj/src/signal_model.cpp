#include "pendantss/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "pendantss/kernels.hpp"
#include "pendantss/rng.hpp"

namespace pendantss {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Noise is drawn from a stream decoupled from the structure draws so that a
// fixed ground truth can be re-observed under fresh noise seeds.
constexpr std::uint64_t kNoiseStreamSalt = 0x9E3779B97F4A7C15ull;

void check_shapes(std::size_t n, std::size_t l) {
  if (l == 0 || l % 2 == 0)
    throw ParameterError("kernel length must be odd and positive");
  if (l > n) throw ParameterError("kernel longer than signal");
}

}  // namespace

void DatasetSpec::validate() const {
  if (n_samples < 1) throw ParameterError("n_samples must be >= 1");
  if (kernel_len < 1 || kernel_len % 2 == 0)
    throw ParameterError("kernel_len must be odd and positive");
  if (kernel_len > n_samples)
    throw ParameterError("kernel_len must not exceed n_samples");
  if (kernel_sigma <= 0.0) throw ParameterError("kernel_sigma must be > 0");
  if (n_spikes < 0) throw ParameterError("n_spikes must be >= 0");
  if (noise_frac < 0.0 || noise_frac > 1.0)
    throw ParameterError("noise_frac must be in [0, 1]");
  if (amplitude_low <= 0.0) throw ParameterError("amplitude_low must be > 0");
  if (amplitude_high < amplitude_low)
    throw ParameterError("amplitude range must satisfy low <= high");
  if (min_separation < 1) throw ParameterError("min_separation must be >= 1");
  if (static_cast<long long>(n_spikes) * min_separation >= n_samples)
    throw ParameterError("n_spikes * min_separation must be < n_samples");
}

Signal convolve_same(const Signal& s, const Kernel& k) {
  const std::size_t n = s.size();
  const std::size_t l = k.size();
  check_shapes(n, l);
  thread_local std::vector<double> spad;
  spad.assign(n + l - 1, 0.0);
  std::copy(s.begin(), s.end(), spad.begin() + (l - 1) / 2);
  Signal out(n);
  kernels::active().conv_same_padded(spad.data(), n, k.data(), l, out.data());
  return out;
}

Signal convolve_adjoint_signal(const Signal& r, const Kernel& k) {
  // C_k^T equals "same" convolution with the reversed kernel.
  thread_local std::vector<double> krev;
  krev.assign(k.rbegin(), k.rend());
  return convolve_same(r, krev);
}

Kernel convolve_adjoint_kernel(const Signal& r, const Signal& s,
                               int kernel_len) {
  const std::size_t n = s.size();
  const std::size_t l = static_cast<std::size_t>(kernel_len);
  check_shapes(n, l);
  if (r.size() != n) throw ParameterError("residual/signal length mismatch");
  thread_local std::vector<double> rpad;
  rpad.assign(n + l - 1, 0.0);
  std::copy(r.begin(), r.end(), rpad.begin() + (l - 1) / 2);
  Kernel out(l);
  const auto& ops = kernels::active();
  // (D_s^T r)[j] = sum_m s[m] * r[m + j - (l-1)/2]
  for (std::size_t j = 0; j < l; ++j)
    out[j] = ops.dot(s.data(), rpad.data() + j, n);
  return out;
}

Kernel gaussian_kernel(int len, double sigma) {
  if (len < 1 || len % 2 == 0)
    throw ParameterError("kernel length must be odd and positive");
  Kernel k(len);
  if (len == 1) {
    k[0] = 1.0;
    return k;
  }
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  double total = 0.0;
  for (int i = 0; i < len; ++i) {
    const double u = -1.0 + 2.0 * i / (len - 1);
    k[i] = std::exp(-u * u * inv2s2);
    total += k[i];
  }
  for (double& v : k) v /= total;
  return k;
}

std::pair<GroundTruth, Signal> generate_dataset(const DatasetSpec& spec) {
  spec.validate();
  const int n = spec.n_samples;
  Rng rng(spec.seed);

  GroundTruth truth;
  truth.kernel = gaussian_kernel(spec.kernel_len, spec.kernel_sigma);
  truth.noise_sigma = spec.noise_frac;

  // Spike positions without replacement, min_separation apart.
  truth.spikes.assign(n, 0.0);
  std::vector<int> positions;
  const long long max_attempts = 1000LL * (spec.n_spikes + 1);
  long long attempts = 0;
  while (static_cast<int>(positions.size()) < spec.n_spikes) {
    if (++attempts > max_attempts)
      throw GenerationError("could not place spikes with requested separation");
    const int pos = static_cast<int>(rng.uniform_index(n));
    bool ok = true;
    for (int p : positions)
      if (std::abs(p - pos) < spec.min_separation) {
        ok = false;
        break;
      }
    if (ok) positions.push_back(pos);
  }
  for (int p : positions)
    truth.spikes[p] = rng.uniform(spec.amplitude_low, spec.amplitude_high);
  truth.support = positions;
  std::sort(truth.support.begin(), truth.support.end());

  const Signal peaks = convolve_same(truth.spikes, truth.kernel);
  double x_max = 0.0;
  for (double v : peaks) x_max = std::max(x_max, std::abs(v));

  // Two sinusoids with periods N and N/2 plus a gentle ramp, scaled so the
  // trend peaks at ~50% of x_max.
  const double phi1 = rng.uniform(0.0, kTwoPi);
  const double phi2 = rng.uniform(0.0, kTwoPi);
  truth.trend.assign(n, 0.0);
  double t_max = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / n;
    const double ramp = (n > 1) ? (static_cast<double>(i) / (n - 1) - 0.5) : 0.0;
    truth.trend[i] = std::sin(kTwoPi * x + phi1) +
                     0.6 * std::sin(2.0 * kTwoPi * x + phi2) + 0.8 * ramp;
    t_max = std::max(t_max, std::abs(truth.trend[i]));
  }
  if (t_max > 0.0 && x_max > 0.0) {
    const double scale = 0.5 * x_max / t_max;
    for (double& v : truth.trend) v *= scale;
  }

  return {truth, assemble_observation(truth, spec.seed)};
}

Signal assemble_observation(const GroundTruth& truth,
                            std::uint64_t noise_seed) {
  Signal y = convolve_same(truth.spikes, truth.kernel);
  double x_max = 0.0;
  for (double v : y) x_max = std::max(x_max, std::abs(v));
  const double sigma = truth.noise_sigma * x_max;
  Rng noise_rng(noise_seed ^ kNoiseStreamSalt);
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] += truth.trend[i];
    if (sigma > 0.0) y[i] += sigma * noise_rng.gaussian();
  }
  return y;
}

}  // namespace pendantss
