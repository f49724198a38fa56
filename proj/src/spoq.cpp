#include "pendantss/spoq.hpp"

#include <cmath>

namespace pendantss {

namespace {

void check_finite(const Signal& s) {
  for (double v : s)
    if (!std::isfinite(v)) throw ParameterError("signal contains non-finite values");
}

// (x^2 + alpha^2)^(p/2 - 1) with fast paths for the two (p,q) settings used
// throughout: p = 1 (inverse square root) and p = 2 (constant 1).
inline double pow_p2m1(double x, double alpha2, double p) {
  const double t = x * x + alpha2;
  if (p == 1.0) return 1.0 / std::sqrt(t);
  if (p == 2.0) return 1.0;
  return std::pow(t, 0.5 * p - 1.0);
}

inline double abs_pow(double x, double q) {
  const double a = std::fabs(x);
  if (q == 2.0) return a * a;
  return std::pow(a, q);
}

}  // namespace

void validate(const SpoqParams& params) {
  if (!(params.p > 0.0 && params.p < 2.0))
    throw ParameterError("SPOQ requires 0 < p < 2");
  if (!(params.q >= 2.0)) throw ParameterError("SPOQ requires q >= 2");
  if (!(params.alpha > 0.0)) throw ParameterError("SPOQ requires alpha > 0");
  if (!(params.beta > 0.0)) throw ParameterError("SPOQ requires beta > 0");
  if (!(params.eta > 0.0)) throw ParameterError("SPOQ requires eta > 0");
  if (!(params.lambda >= 0.0)) throw ParameterError("SPOQ requires lambda >= 0");
  if (params.q > 2.0) return;
  const double lhs = params.eta * params.eta *
                     std::pow(params.alpha, params.p - 2.0);
  const double rhs = std::pow(params.beta, params.p);
  if (!(lhs > rhs))
    throw ParameterError(
        "SPOQ validity violated: q = 2 requires eta^2 * alpha^(p-2) > beta^p");
}

double lp_alpha_p(const Signal& s, const SpoqParams& params) {
  check_finite(s);
  const double alpha2 = params.alpha * params.alpha;
  const double alpha_p = std::pow(params.alpha, params.p);
  const double half_p = 0.5 * params.p;
  double acc = 0.0;
  for (double v : s) acc += std::pow(v * v + alpha2, half_p) - alpha_p;
  return acc;
}

double lq_eta(const Signal& s, const SpoqParams& params) {
  check_finite(s);
  double acc = 0.0;
  for (double v : s) acc += abs_pow(v, params.q);
  return std::pow(std::pow(params.eta, params.q) + acc, 1.0 / params.q);
}

double psi(const Signal& s, const SpoqParams& params) {
  const double beta_p = std::pow(params.beta, params.p);
  const double eta_q = std::pow(params.eta, params.q);
  double sum_q = 0.0;
  for (double v : s) sum_q += abs_pow(v, params.q);
  // log(lp + beta^p) through log1p: near s = 0 the lp sum is far below
  // beta^p and the direct sum would lose the small-signal variation.
  const double lp = lp_alpha_p(s, params);
  const double log_num = std::log(params.beta) + std::log1p(lp / beta_p) / params.p;
  const double log_den = std::log(params.eta) + std::log1p(sum_q / eta_q) / params.q;
  return log_num - log_den;
}

Signal grad_psi(const Signal& s, const SpoqParams& params) {
  check_finite(s);
  const double alpha2 = params.alpha * params.alpha;
  const double beta_p = std::pow(params.beta, params.p);
  const double eta_q = std::pow(params.eta, params.q);
  const double denom_p = lp_alpha_p(s, params) + beta_p;
  double sum_q = 0.0;
  for (double v : s) sum_q += abs_pow(v, params.q);
  const double denom_q = eta_q + sum_q;

  Signal g(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double v = s[i];
    const double num_p = v * pow_p2m1(v, alpha2, params.p);
    double num_q = 0.0;
    if (v != 0.0) {
      const double a = std::fabs(v);
      num_q = (v > 0.0 ? 1.0 : -1.0) *
              (params.q == 2.0 ? a : std::pow(a, params.q - 1.0));
    }
    g[i] = num_p / denom_p - num_q / denom_q;
  }
  return g;
}

double chi_q_rho(double rho, const SpoqParams& params) {
  const double eta_q = std::pow(params.eta, params.q);
  const double rho_q = rho == 0.0 ? 0.0 : std::pow(rho, params.q);
  return (params.q - 1.0) / std::pow(eta_q + rho_q, 2.0 / params.q);
}

Signal mm_metric_diag(const Signal& s, double lip_rho1, double rho,
                      const SpoqParams& params) {
  const double alpha2 = params.alpha * params.alpha;
  const double beta_p = std::pow(params.beta, params.p);
  const double denom_p = lp_alpha_p(s, params) + beta_p;
  const double base = lip_rho1 + params.lambda * chi_q_rho(rho, params);
  Signal diag(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    diag[i] = base + params.lambda * pow_p2m1(s[i], alpha2, params.p) / denom_p;
  return diag;
}

bool in_ball_complement(const Signal& s, double rho, double q) {
  if (rho == 0.0) return true;
  double acc = 0.0;
  for (double v : s) acc += abs_pow(v, q);
  return acc >= std::pow(rho, q);
}

}  // namespace pendantss
