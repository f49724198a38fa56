#include "pendantss/tuning.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace pendantss {

namespace {

void parallel_for(int jobs, std::size_t count,
                  const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      body(i);
    }
  };
  const int n_threads = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(jobs), count));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

struct Solved {
  Signal s;
  Kernel pi;
  Signal t;
  int iterations = 0;
  StopReason stop_reason = StopReason::max_iter;
};

Solved solve_and_align(const ProblemInstance& instance,
                       const SolverConfig& config) {
  Problem problem(instance);
  SolveResult result = solve(problem, config);
  auto [s2, pi2] = center_shift_postprocess(result.s_hat, result.pi_hat);
  Signal r = convolve_same(s2, pi2);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = instance.observation[i] - r[i];
  return {std::move(s2), std::move(pi2), problem.filter().lowpass(r),
          result.iterations, result.stop_reason};
}

struct MetricField {
  double MetricsReport::* member;
};

constexpr MetricField kMetricFields[] = {
    {&MetricsReport::snr_s},  {&MetricsReport::tsnr_s},
    {&MetricsReport::snr_t},  {&MetricsReport::snr_pi},
    {&MetricsReport::weighted}};

}  // namespace

void GridSpec::validate() const {
  if (lambda_values.empty() || beta_values.empty() || eta_values.empty() ||
      pq_pairs.empty())
    throw ParameterError("grid lists must be nonempty");
  for (double v : lambda_values)
    if (!(v > 0.0)) throw ParameterError("lambda grid values must be > 0");
  for (double v : beta_values)
    if (!(v > 0.0)) throw ParameterError("beta grid values must be > 0");
  for (double v : eta_values)
    if (!(v > 0.0)) throw ParameterError("eta grid values must be > 0");
}

GridSearchResult grid_search(const ProblemInstance& base,
                             const GroundTruth& truth, const GridSpec& grid,
                             const SolverConfig& config, int jobs) {
  grid.validate();
  GridSearchResult out;
  for (const auto& [p, q] : grid.pq_pairs)
    for (double lambda : grid.lambda_values)
      for (double beta : grid.beta_values)
        for (double eta : grid.eta_values) {
          GridEntry entry;
          entry.params = base.spoq;
          entry.params.p = p;
          entry.params.q = q;
          entry.params.beta = beta;
          entry.params.eta = eta;
          entry.params.lambda = lambda;
          try {
            validate(entry.params);
            entry.valid = true;
          } catch (const ParameterError& err) {
            entry.skip_reason = err.what();
          }
          out.table.push_back(std::move(entry));
        }

  parallel_for(jobs, out.table.size(), [&](std::size_t i) {
    GridEntry& entry = out.table[i];
    if (!entry.valid) return;
    try {
      ProblemInstance instance = base;
      instance.spoq = entry.params;
      const Solved solved = solve_and_align(instance, config);
      entry.metrics = compute_metrics(truth, solved.s, solved.pi, solved.t);
      entry.iterations = solved.iterations;
    } catch (const std::exception& err) {
      entry.valid = false;
      entry.skip_reason = std::string("solve failed: ") + err.what();
    }
  });

  const GridEntry* best = nullptr;
  for (const GridEntry& entry : out.table) {
    if (!entry.valid) continue;
    if (best == nullptr) {
      best = &entry;
      continue;
    }
    const double w = entry.metrics.weighted;
    const double bw = best->metrics.weighted;
    if (w > bw) {
      best = &entry;
    } else if (w == bw) {
      const auto key = [](const GridEntry& e) {
        return std::make_tuple(e.params.lambda, e.params.beta, e.params.eta);
      };
      if (key(entry) < key(*best)) best = &entry;
    }
  }
  if (best == nullptr)
    throw ParameterError("grid search: no grid point satisfies the validity condition");
  out.best = best->params;
  return out;
}

BatterySummary run_trial_battery(const DatasetSpec& spec,
                                 const SpoqParams& params,
                                 const FilterSpec& filter, const BoxSet& box,
                                 const SolverConfig& config, int n_seeds,
                                 int jobs) {
  if (n_seeds < 2) throw ParameterError("battery requires n_seeds >= 2");
  const auto [truth, y0] = generate_dataset(spec);
  (void)y0;

  BatterySummary summary;
  summary.rows.resize(n_seeds);
  parallel_for(jobs, static_cast<std::size_t>(n_seeds), [&](std::size_t i) {
    TrialRow& row = summary.rows[i];
    row.noise_seed = spec.seed + 1 + i;
    try {
      ProblemInstance instance;
      instance.observation = assemble_observation(truth, row.noise_seed);
      instance.filter = filter;
      instance.spoq = params;
      instance.box = box;
      instance.kernel_len = spec.kernel_len;
      if (!config.blind) instance.known_kernel = truth.kernel;
      const Solved solved = solve_and_align(instance, config);
      row.metrics = compute_metrics(truth, solved.s, solved.pi, solved.t);
      row.iterations = solved.iterations;
      row.stop_reason = solved.stop_reason;
      row.ok = true;
    } catch (const std::exception& err) {
      row.error = err.what();
    }
  });

  int n_ok = 0;
  for (const TrialRow& row : summary.rows)
    if (row.ok) ++n_ok;
  summary.n_failed = n_seeds - n_ok;
  if (n_ok > 0) {
    for (const MetricField& f : kMetricFields) {
      double mean = 0.0;
      for (const TrialRow& row : summary.rows)
        if (row.ok) mean += row.metrics.*(f.member);
      mean /= n_ok;
      double var = 0.0;
      for (const TrialRow& row : summary.rows)
        if (row.ok) {
          const double d = row.metrics.*(f.member) - mean;
          var += d * d;
        }
      summary.mean.*(f.member) = mean;
      summary.stddev.*(f.member) = n_ok > 1 ? std::sqrt(var / (n_ok - 1)) : 0.0;
    }
  }
  return summary;
}

std::function<double(const FilterSpec&)> pilot_cutoff_scorer(
    const ProblemInstance& base, const GroundTruth* truth,
    const SolverConfig& config) {
  return [base, truth, config](const FilterSpec& candidate) -> double {
    try {
      ProblemInstance instance = base;
      instance.filter = candidate;
      if (truth != nullptr) {
        const Solved solved = solve_and_align(instance, config);
        return compute_metrics(*truth, solved.s, solved.pi, solved.t).weighted;
      }
      Problem problem(instance);
      const SolveResult result = solve(problem, config);
      return -result.objective_trace.back();
    } catch (const std::exception&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
}

}  // namespace pendantss
