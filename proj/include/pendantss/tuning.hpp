#ifndef PENDANTSS_TUNING_HPP
#define PENDANTSS_TUNING_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pendantss/metrics.hpp"
#include "pendantss/solver.hpp"

namespace pendantss {

struct GridSpec {
  std::vector<double> lambda_values;
  std::vector<double> beta_values;
  std::vector<double> eta_values;
  std::vector<std::pair<double, double>> pq_pairs;

  void validate() const;
};

struct GridEntry {
  SpoqParams params;
  bool valid = false;
  std::string skip_reason;  // set when the combination fails the validity check
  MetricsReport metrics;
  int iterations = 0;
};

struct GridSearchResult {
  SpoqParams best;
  std::vector<GridEntry> table;
};

// Solves once per valid grid point on the tuning realization, scores
// 2*snr_s + snr_pi + snr_t after the center-shift post-processing; ties go
// to smaller lambda, then beta, then eta, then listed (p,q) order.
GridSearchResult grid_search(const ProblemInstance& base,
                             const GroundTruth& truth, const GridSpec& grid,
                             const SolverConfig& config, int jobs = 1);

struct TrialRow {
  std::uint64_t noise_seed = 0;
  bool ok = false;
  std::string error;
  MetricsReport metrics;
  int iterations = 0;
  StopReason stop_reason = StopReason::max_iter;
};

struct BatterySummary {
  std::vector<TrialRow> rows;
  MetricsReport mean;
  MetricsReport stddev;  // sample standard deviation over successful rows
  int n_failed = 0;
};

// Fixes spikes/kernel/trend from spec.seed and re-draws only the noise:
// trial i uses noise seed spec.seed + 1 + i.
BatterySummary run_trial_battery(const DatasetSpec& spec,
                                 const SpoqParams& params,
                                 const FilterSpec& filter, const BoxSet& box,
                                 const SolverConfig& config, int n_seeds,
                                 int jobs = 1);

// Scorer for select_cutoff: a pilot solve per candidate, scored by the
// weighted SNR when ground truth is known, else by -objective.
std::function<double(const FilterSpec&)> pilot_cutoff_scorer(
    const ProblemInstance& base, const GroundTruth* truth,
    const SolverConfig& config);

}  // namespace pendantss

#endif
