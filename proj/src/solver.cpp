#include "pendantss/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pendantss/kernels.hpp"
#include "pendantss/rng.hpp"
#include "pendantss/signal_model.hpp"

namespace pendantss {

namespace {

constexpr double kCertSlack = 1e-9;
constexpr double kLipschitzFloor = 1e-12;
constexpr double kLipschitzSafety = 1.01;

double norm2(const Signal& v) {
  return std::sqrt(kernels::active().dot(v.data(), v.data(), v.size()));
}

double sum_abs_pow(const Signal& s, double q) {
  double acc = 0.0;
  if (q == 2.0) {
    acc = kernels::active().dot(s.data(), s.data(), s.size());
  } else {
    for (double v : s) acc += std::pow(std::fabs(v), q);
  }
  return acc;
}

// Largest eigenvalue of M^T M by power iteration.
double operator_norm_sq(
    const std::function<Signal(const Signal&)>& apply,
    const std::function<Signal(const Signal&)>& apply_adjoint,
    std::size_t dim, std::vector<double>* warm) {
  Signal v;
  if (warm != nullptr && warm->size() == dim && norm2(*warm) > 0.0) {
    v = *warm;
  } else {
    Rng rng(0xC0FFEEull);
    v.resize(dim);
    for (double& x : v) x = rng.gaussian();
  }
  double vn = norm2(v);
  if (vn == 0.0) {
    v.assign(dim, 1.0);
    vn = std::sqrt(static_cast<double>(dim));
  }
  for (double& x : v) x /= vn;

  double lam = 0.0;
  for (int it = 0; it < 200; ++it) {
    Signal w = apply_adjoint(apply(v));
    const double rayleigh =
        kernels::active().dot(v.data(), w.data(), dim);
    const double wn = norm2(w);
    if (wn == 0.0) {
      lam = 0.0;
      break;
    }
    for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / wn;
    if (std::fabs(rayleigh - lam) <= 1e-6 * std::fabs(rayleigh)) {
      lam = rayleigh;
      break;
    }
    lam = rayleigh;
  }
  if (warm != nullptr) *warm = v;
  return std::max(lam * kLipschitzSafety, kLipschitzFloor);
}

}  // namespace

void SolverConfig::validate() const {
  if (!(theta > 0.0 && theta < 1.0))
    throw ParameterError("theta must lie in (0, 1)");
  if (max_tr_trials < 1) throw ParameterError("max_tr_trials must be >= 1");
  if (!(gamma_s >= 0.01 && gamma_s <= 1.99))
    throw ParameterError("gamma_s must lie in [0.01, 1.99]");
  if (!(gamma_pi >= 0.01 && gamma_pi <= 1.99))
    throw ParameterError("gamma_pi must lie in [0.01, 1.99]");
  if (epsilon < 0.0) throw ParameterError("epsilon must be >= 0");
  if (k_max < 0) throw ParameterError("k_max must be >= 0");
  if (!(kappa1 > 0.0 && kappa2 > 0.0))
    throw ParameterError("kappa constants must be > 0");
}

void ProblemInstance::validate() const {
  const int n = static_cast<int>(observation.size());
  if (n < 1) throw ParameterError("observation must be non-empty");
  for (double v : observation)
    if (!std::isfinite(v)) throw ParameterError("observation must be finite");
  if (kernel_len < 1 || kernel_len % 2 == 0 || kernel_len > n)
    throw ParameterError("kernel_len must be odd and <= N");
  filter.validate(n);
  pendantss::validate(spoq);
  box.validate();
  if (known_kernel &&
      static_cast<int>(known_kernel->size()) != kernel_len)
    throw ParameterError("known_kernel length must equal kernel_len");
}

Problem::Problem(ProblemInstance instance)
    : instance_(std::move(instance)),
      filter_(instance_.filter,
              static_cast<int>(instance_.observation.size())) {
  instance_.validate();
}

double Problem::objective(const Signal& s, const Kernel& pi) const {
  Signal r = convolve_same(s, pi);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = instance_.observation[i] - r[i];
  const Signal hr = filter_.highpass(r);
  const double fid =
      0.5 * kernels::active().dot(hr.data(), hr.data(), hr.size());
  return fid + instance_.spoq.lambda * psi(s, instance_.spoq);
}

Signal Problem::grad_signal(const Signal& s, const Kernel& pi) const {
  Signal r = convolve_same(s, pi);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = instance_.observation[i] - r[i];
  const Signal hhr = filter_.highpass(filter_.highpass(r));
  Signal g = convolve_adjoint_signal(hhr, pi);
  const double lambda = instance_.spoq.lambda;
  if (lambda > 0.0) {
    const Signal gp = grad_psi(s, instance_.spoq);
    for (std::size_t i = 0; i < g.size(); ++i)
      g[i] = -g[i] + lambda * gp[i];
  } else {
    for (double& v : g) v = -v;
  }
  return g;
}

Kernel Problem::grad_kernel(const Signal& s, const Kernel& pi) const {
  Signal r = convolve_same(s, pi);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = instance_.observation[i] - r[i];
  const Signal hhr = filter_.highpass(filter_.highpass(r));
  Kernel g = convolve_adjoint_kernel(hhr, s, instance_.kernel_len);
  for (double& v : g) v = -v;
  return g;
}

double Problem::lipschitz_signal(const Kernel& pi, Signal* warm) const {
  return operator_norm_sq(
      [&](const Signal& v) { return filter_.highpass(convolve_same(v, pi)); },
      [&](const Signal& u) {
        return convolve_adjoint_signal(filter_.highpass(u), pi);
      },
      instance_.observation.size(), warm);
}

double Problem::lipschitz_kernel(const Signal& s, Kernel* warm) const {
  const int l = instance_.kernel_len;
  return operator_norm_sq(
      [&](const Kernel& p) { return filter_.highpass(convolve_same(s, p)); },
      [&](const Signal& u) {
        return convolve_adjoint_kernel(filter_.highpass(u), s, l);
      },
      static_cast<std::size_t>(l), warm);
}

SignalStep signal_update(const Problem& problem, const Signal& s,
                         const Kernel& pi, double lambda1, const Signal& grad,
                         const SolverConfig& config) {
  const SpoqParams& spoq = problem.instance().spoq;
  const BoxSet& box = problem.instance().box;
  const std::size_t n = s.size();
  const int trials_max = config.max_tr_trials;

  SignalStep step;
  step.rho_first = sum_abs_pow(s, spoq.q);

  double rho = step.rho_first;
  Signal candidate(n), metric;
  for (int i = 1; i <= trials_max; ++i) {
    if (i == trials_max)
      rho = 0.0;
    else if (i > 1)
      rho = config.theta * rho;
    metric = mm_metric_diag(s, lambda1, rho, spoq);
    for (std::size_t j = 0; j < n; ++j)
      candidate[j] = s[j] - config.gamma_s * grad[j] / metric[j];
    candidate = project_box(candidate, box);
    if (in_ball_complement(candidate, rho, spoq.q)) {
      step.trials = i;
      step.rho_accepted = rho;
      break;
    }
    if (i == trials_max)
      throw std::logic_error("TR loop failed to accept the final rho = 0 trial");
  }
  step.s_next = std::move(candidate);
  step.in_ball = in_ball_complement(step.s_next, step.rho_accepted, spoq.q);

  const auto [mn, mx] = std::minmax_element(metric.begin(), metric.end());
  step.metric_min = *mn;
  step.metric_max = *mx;

  // Eq.-style first-order certificates for the accepted trial.
  double lin = 0.0, quad_a = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = step.s_next[j] - s[j];
    lin += d * grad[j];
    quad_a += metric[j] * d * d;
  }
  step.cert_decrease = lin + quad_a / config.gamma_s;
  step.cert_residual = normal_cone_residual_box(step.s_next, grad, box);
  step.cert_bound = config.kappa1 * std::sqrt(quad_a);
  step.cert_ok = step.cert_decrease <= kCertSlack &&
                 step.cert_residual <= step.cert_bound + kCertSlack;
  return step;
}

KernelStep kernel_update(const Problem& problem, const Signal& s,
                         const Kernel& pi, double lambda2, const Kernel& grad,
                         const SolverConfig& config) {
  (void)problem;
  (void)s;
  const std::size_t l = pi.size();
  Kernel z(l);
  for (std::size_t j = 0; j < l; ++j)
    z[j] = pi[j] - config.gamma_pi * grad[j] / lambda2;

  KernelStep step;
  step.pi_next = project_simplex(z);

  double lin = 0.0, quad = 0.0;
  for (std::size_t j = 0; j < l; ++j) {
    const double d = step.pi_next[j] - pi[j];
    lin += d * grad[j];
    quad += d * d;
  }
  step.cert_decrease = lin + lambda2 * quad / config.gamma_pi;
  step.cert_residual = normal_cone_residual_simplex(step.pi_next, grad);
  step.cert_bound = config.kappa2 * std::sqrt(lambda2 * quad);
  step.cert_ok = step.cert_decrease <= kCertSlack &&
                 step.cert_residual <= step.cert_bound + kCertSlack;
  return step;
}

SolveResult solve(const Problem& problem, const SolverConfig& config,
                  const std::optional<Signal>& s0,
                  const std::optional<Kernel>& pi0) {
  config.validate();
  const ProblemInstance& inst = problem.instance();
  if (!config.blind && !inst.known_kernel)
    throw ParameterError("non-blind mode requires known_kernel");

  const std::size_t n = inst.observation.size();
  const double eps =
      config.epsilon > 0.0 ? config.epsilon
                           : std::sqrt(static_cast<double>(n)) * 1e-6;

  Signal s = s0 ? project_box(*s0, inst.box)
                : project_box(Signal(n, 1.0), inst.box);
  Kernel pi;
  if (!config.blind) {
    pi = *inst.known_kernel;
  } else if (pi0) {
    pi = project_simplex(*pi0);
  } else {
    pi = project_simplex(gaussian_kernel(inst.kernel_len, 1.0));
  }

  SolveResult result;
  result.objective_trace.push_back(problem.objective(s, pi));
  result.stop_reason = StopReason::max_iter;

  Signal warm_s;
  Kernel warm_pi;
  for (int k = 0; k < config.k_max; ++k) {
    IterationDiagnostics diag;
    diag.lambda1 = problem.lipschitz_signal(pi, &warm_s);

    const Signal grad_s = problem.grad_signal(s, pi);
    SignalStep sstep =
        signal_update(problem, s, pi, diag.lambda1, grad_s, config);

    diag.tr_trials = sstep.trials;
    diag.rho_first = sstep.rho_first;
    diag.rho_accepted = sstep.rho_accepted;
    diag.sum_q_prev = sum_abs_pow(s, inst.spoq.q);
    diag.sum_q_accepted = sum_abs_pow(sstep.s_next, inst.spoq.q);
    diag.in_ball = sstep.in_ball;
    diag.metric_min = sstep.metric_min;
    diag.metric_max = sstep.metric_max;
    diag.cert_s_decrease = sstep.cert_decrease;
    diag.cert_s_residual = sstep.cert_residual;
    diag.cert_s_bound = sstep.cert_bound;
    diag.cert_s_ok = sstep.cert_ok;

    double delta_s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = sstep.s_next[j] - s[j];
      delta_s += d * d;
    }
    diag.delta_s_norm = std::sqrt(delta_s);

    Signal s_next = std::move(sstep.s_next);
    diag.omega_after_signal = problem.objective(s_next, pi);
    result.objective_trace.push_back(diag.omega_after_signal);

    Kernel pi_next = pi;
    if (config.blind) {
      diag.lambda2 = problem.lipschitz_kernel(s_next, &warm_pi);
      const Kernel grad_pi = problem.grad_kernel(s_next, pi);
      KernelStep pstep =
          kernel_update(problem, s_next, pi, diag.lambda2, grad_pi, config);
      diag.cert_pi_decrease = pstep.cert_decrease;
      diag.cert_pi_residual = pstep.cert_residual;
      diag.cert_pi_bound = pstep.cert_bound;
      diag.cert_pi_ok = pstep.cert_ok;
      double delta_pi = 0.0;
      for (std::size_t j = 0; j < pi.size(); ++j) {
        const double d = pstep.pi_next[j] - pi[j];
        delta_pi += d * d;
      }
      diag.delta_pi_norm = std::sqrt(delta_pi);
      pi_next = std::move(pstep.pi_next);
      diag.omega_after_kernel = problem.objective(s_next, pi_next);
      result.objective_trace.push_back(diag.omega_after_kernel);
    } else {
      diag.omega_after_kernel = diag.omega_after_signal;
    }

    result.tr_trials_per_iter.push_back(diag.tr_trials);
    result.diagnostics.push_back(diag);
    result.iterations = k + 1;

    s = std::move(s_next);
    pi = std::move(pi_next);
    if (diag.delta_s_norm <= eps) {
      result.stop_reason = StopReason::tolerance;
      break;
    }
  }

  Signal r = convolve_same(s, pi);
  for (std::size_t i = 0; i < n; ++i) r[i] = inst.observation[i] - r[i];
  result.t_hat = problem.filter().lowpass(r);
  result.s_hat = std::move(s);
  result.pi_hat = std::move(pi);
  return result;
}

std::pair<Signal, Kernel> center_shift_postprocess(const Signal& s_hat,
                                                   const Kernel& pi_hat) {
  const int l = static_cast<int>(pi_hat.size());
  const int n = static_cast<int>(s_hat.size());
  const int center = (l - 1) / 2;
  double mass = 0.0, moment = 0.0;
  for (int j = 0; j < l; ++j) {
    mass += pi_hat[j];
    moment += j * pi_hat[j];
  }
  if (mass == 0.0) return {s_hat, pi_hat};
  const int delta = static_cast<int>(std::lround(moment / mass)) - center;
  if (delta == 0) return {s_hat, pi_hat};

  Kernel pi(l);
  for (int j = 0; j < l; ++j) pi[j] = pi_hat[(((j + delta) % l) + l) % l];
  Signal s(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const int src = i - delta;
    if (src >= 0 && src < n) s[i] = s_hat[src];
  }
  return {s, pi};
}

}  // namespace pendantss
