#include "pendantss/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pendantss/kernels.hpp"

namespace pendantss {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;
}  // namespace

void FilterSpec::validate(int n_samples) const {
  if (n_samples < 1) throw ParameterError("filter length must be >= 1");
  const int half = n_samples / 2;
  if (cutoff_bin < 0 || cutoff_bin > half)
    throw ParameterError("cutoff_bin must lie in [0, N/2]");
  if (transition_bins < 0)
    throw ParameterError("transition_bins must be >= 0");
  if (cutoff_bin + transition_bins > half)
    throw ParameterError("cutoff_bin + transition_bins must not exceed N/2");
}

double LowpassOperator::response(int bin) const {
  const int c = spec_.cutoff_bin;
  const int t = spec_.transition_bins;
  if (bin < c) return 1.0;
  if (bin >= c + t) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (bin - c + 1) / (t + 1)));
}

LowpassOperator::LowpassOperator(const FilterSpec& spec, int n_samples)
    : spec_(spec), n_(n_samples) {
  spec.validate(n_samples);
  const int n = n_;
  // First column of the circulant: inverse DFT of the folded response.
  std::vector<double> col(n);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int m = 0; m < n; ++m) {
      const double g = response(std::min(m, n - m));
      if (g != 0.0) acc += g * std::cos(kTwoPi * m * j / n);
    }
    col[j] = acc / n;
  }
  dense_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      dense_[static_cast<std::size_t>(i) * n + j] = col[(i - j + n) % n];
}

Signal LowpassOperator::lowpass(const Signal& y) const {
  if (static_cast<int>(y.size()) != n_)
    throw ParameterError("signal length does not match filter design length");
  Signal out(n_);
  kernels::active().matvec(dense_.data(), n_, n_, y.data(), out.data());
  return out;
}

Signal LowpassOperator::highpass(const Signal& y) const {
  Signal out = lowpass(y);
  for (int i = 0; i < n_; ++i) out[i] = y[i] - out[i];
  return out;
}

Signal apply_lowpass(const Signal& y, const FilterSpec& spec) {
  return LowpassOperator(spec, static_cast<int>(y.size())).lowpass(y);
}

Signal apply_highpass(const Signal& y, const FilterSpec& spec) {
  return LowpassOperator(spec, static_cast<int>(y.size())).highpass(y);
}

std::vector<FilterSpec> spectral_peak_candidates(const Signal& y,
                                                 int max_peaks,
                                                 int transition_bins) {
  const int n = static_cast<int>(y.size());
  const int half = n / 2;
  std::vector<double> mod(half + 1, 0.0);
  for (int m = 0; m <= half; ++m) {
    double re = 0.0, im = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = kTwoPi * m * i / n;
      re += y[i] * std::cos(a);
      im -= y[i] * std::sin(a);
    }
    mod[m] = std::hypot(re, im);
  }
  std::vector<FilterSpec> out;
  for (int m = 1; m < half && static_cast<int>(out.size()) < max_peaks; ++m) {
    if (mod[m] > mod[m - 1] && mod[m] > mod[m + 1]) {
      FilterSpec spec;
      spec.cutoff_bin = m;
      spec.transition_bins = std::min(transition_bins, half - m);
      out.push_back(spec);
    }
  }
  return out;
}

CutoffSelection select_cutoff(
    const Signal& y, std::vector<FilterSpec> candidates,
    const std::function<double(const FilterSpec&)>& scorer) {
  if (candidates.empty()) candidates = spectral_peak_candidates(y);
  if (candidates.empty()) {
    FilterSpec fallback;
    fallback.cutoff_bin = std::max(1, static_cast<int>(y.size()) / 20);
    fallback.transition_bins =
        std::min(fallback.transition_bins,
                 static_cast<int>(y.size()) / 2 - fallback.cutoff_bin);
    return {fallback, true};
  }
  double best_score = -std::numeric_limits<double>::infinity();
  const FilterSpec* best = nullptr;
  for (const FilterSpec& cand : candidates) {
    const double score = scorer(cand);
    if (std::isnan(score)) continue;
    if (best == nullptr || score > best_score ||
        (score == best_score && cand.cutoff_bin < best->cutoff_bin)) {
      best_score = score;
      best = &cand;
    }
  }
  if (best == nullptr) return {candidates.front(), false};
  return {*best, false};
}

}  // namespace pendantss
