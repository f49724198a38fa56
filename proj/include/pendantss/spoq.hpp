#ifndef PENDANTSS_SPOQ_HPP
#define PENDANTSS_SPOQ_HPP

#include "pendantss/types.hpp"

namespace pendantss {

// Smoothed lp-over-lq penalty psi(s) = (1/p) log(lp_alpha_p(s) + beta^p)
//                                    - (1/q) log(eta^q + sum |s_n|^q).
// Validity requires q > 2, or q = 2 with eta^2 * alpha^(p-2) > beta^p; under
// that condition 0 is a local minimizer and psi is Lipschitz differentiable.
struct SpoqParams {
  double p = 1.0;
  double q = 2.0;
  double alpha = 7e-7;
  double beta = 5e-3;
  double eta = 1e-1;
  double lambda = 1.0;
};

// Throws ParameterError naming the failing inequality.
void validate(const SpoqParams& params);

// sum_n ((s_n^2 + alpha^2)^(p/2) - alpha^p), the smoothed |s|_p^p. >= 0.
double lp_alpha_p(const Signal& s, const SpoqParams& params);

// (eta^q + sum_n |s_n|^q)^(1/q); equals eta at s = 0.
double lq_eta(const Signal& s, const SpoqParams& params);

double psi(const Signal& s, const SpoqParams& params);

Signal grad_psi(const Signal& s, const SpoqParams& params);

// (q-1) / (eta^q + rho^q)^(2/q); curvature contribution of the lq term valid
// on the lq-ball complement of radius rho.
double chi_q_rho(double rho, const SpoqParams& params);

// Diagonal of the MM metric A_{1,rho}(s, pi):
//   Lambda1 + lambda*chi_{q,rho} + lambda*(s_n^2+alpha^2)^(p/2-1)
//                                  / (lp_alpha_p(s) + beta^p).
Signal mm_metric_diag(const Signal& s, double lip_rho1, double rho,
                      const SpoqParams& params);

// Membership in the lq-ball complement: sum |s_n|^q >= rho^q (inclusive).
bool in_ball_complement(const Signal& s, double rho, double q);

}  // namespace pendantss

#endif
