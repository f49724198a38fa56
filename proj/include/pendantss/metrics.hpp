#ifndef PENDANTSS_METRICS_HPP
#define PENDANTSS_METRICS_HPP

#include "pendantss/signal_model.hpp"
#include "pendantss/types.hpp"

namespace pendantss {

// SNRs in dB; weighted = 2*snr_s + snr_pi + snr_t, the grid-search objective.
struct MetricsReport {
  double snr_s = 0.0;
  double tsnr_s = 0.0;
  double snr_t = 0.0;
  double snr_pi = 0.0;
  double weighted = 0.0;
};

// Exact-match SNRs are capped so aggregates stay finite.
inline constexpr double kSnrCapDb = 300.0;

// 20*log10(||ref|| / ||ref - est||); reference must not be all-zero.
double snr(const Signal& reference, const Signal& estimate);

// snr restricted to the true spike support.
double tsnr(const GroundTruth& truth, const Signal& estimate);

MetricsReport compute_metrics(const GroundTruth& truth, const Signal& s_hat,
                              const Kernel& pi_hat, const Signal& t_hat);

}  // namespace pendantss

#endif
