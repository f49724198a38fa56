#ifndef PENDANTSS_FILTERS_HPP
#define PENDANTSS_FILTERS_HPP

#include <functional>
#include <vector>

#include "pendantss/types.hpp"

namespace pendantss {

// Zero-phase DFT-domain low-pass multiplier. Response is 1 strictly below
// cutoff_bin, 0 strictly above cutoff_bin + transition_bins, raised-cosine in
// between; with transition_bins = 0 the response is a hard 0/1 brick wall (so
// L applied twice equals L applied once).
struct FilterSpec {
  int cutoff_bin = 10;
  int transition_bins = 2;

  void validate(int n_samples) const;
};

// Caches the circulant matrix of L for one signal length; apply is a dense
// matvec. The operator is real, symmetric, and H = Id - L exactly.
class LowpassOperator {
 public:
  LowpassOperator(const FilterSpec& spec, int n_samples);

  Signal lowpass(const Signal& y) const;
  Signal highpass(const Signal& y) const;

  const FilterSpec& spec() const { return spec_; }
  int size() const { return n_; }
  // Response at DFT bin m (folded, m in [0, N/2]).
  double response(int bin) const;

 private:
  FilterSpec spec_;
  int n_;
  std::vector<double> dense_;  // row-major N x N circulant of L
};

// One-shot conveniences; construct the operator for y.size().
Signal apply_lowpass(const Signal& y, const FilterSpec& spec);
Signal apply_highpass(const Signal& y, const FilterSpec& spec);

struct CutoffSelection {
  FilterSpec spec;
  bool fallback = false;  // no spectral peak found, default N/20 used
};

// Candidate cutoffs at the first (ascending bin) local maxima of the DFT
// modulus of y, at most max_peaks of them.
std::vector<FilterSpec> spectral_peak_candidates(const Signal& y,
                                                 int max_peaks = 10,
                                                 int transition_bins = 2);

// Scores each candidate (higher is better) and returns the argmax, ties to
// the smaller cutoff_bin. An empty candidate list is filled from the spectrum
// of y; if no spectral peak exists the N/20 fallback is flagged.
CutoffSelection select_cutoff(
    const Signal& y, std::vector<FilterSpec> candidates,
    const std::function<double(const FilterSpec&)>& scorer);

}  // namespace pendantss

#endif
