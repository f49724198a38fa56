#include "pendantss/metrics.hpp"

#include <cmath>

namespace pendantss {

double snr(const Signal& reference, const Signal& estimate) {
  if (reference.size() != estimate.size())
    throw ParameterError("reference/estimate length mismatch");
  double ref2 = 0.0, err2 = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    ref2 += reference[i] * reference[i];
    const double e = reference[i] - estimate[i];
    err2 += e * e;
  }
  if (ref2 == 0.0) throw ParameterError("reference signal is all-zero");
  if (err2 == 0.0) return kSnrCapDb;
  const double value = 10.0 * std::log10(ref2 / err2);
  return std::min(value, kSnrCapDb);
}

double tsnr(const GroundTruth& truth, const Signal& estimate) {
  if (truth.support.empty())
    throw ParameterError("tsnr requires a nonempty spike support");
  if (truth.spikes.size() != estimate.size())
    throw ParameterError("spikes/estimate length mismatch");
  Signal ref, est;
  ref.reserve(truth.support.size());
  est.reserve(truth.support.size());
  for (int idx : truth.support) {
    ref.push_back(truth.spikes[idx]);
    est.push_back(estimate[idx]);
  }
  return snr(ref, est);
}

MetricsReport compute_metrics(const GroundTruth& truth, const Signal& s_hat,
                              const Kernel& pi_hat, const Signal& t_hat) {
  MetricsReport report;
  report.snr_s = snr(truth.spikes, s_hat);
  report.tsnr_s = tsnr(truth, s_hat);
  report.snr_t = snr(truth.trend, t_hat);
  report.snr_pi = snr(truth.kernel, pi_hat);
  report.weighted = 2.0 * report.snr_s + report.snr_pi + report.snr_t;
  return report;
}

}  // namespace pendantss
