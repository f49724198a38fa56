#ifndef PENDANTSS_SOLVER_HPP
#define PENDANTSS_SOLVER_HPP

#include <optional>
#include <vector>

#include "pendantss/filters.hpp"
#include "pendantss/projections.hpp"
#include "pendantss/spoq.hpp"
#include "pendantss/types.hpp"

namespace pendantss {

struct SolverConfig {
  double theta = 0.5;      // TR radius decay, in (0,1)
  int max_tr_trials = 50;  // TR trial budget per signal update
  double gamma_s = 1.9;
  double gamma_pi = 1.9;
  double epsilon = 0.0;  // stop when ||s_k - s_{k+1}|| <= eps; 0 = sqrt(N)*1e-6
  int k_max = 2000;
  bool blind = true;
  double kappa1 = 1e6;  // inexactness certificate constants; generous values
  double kappa2 = 1e6;  // so a violation flags a genuine bug, not tuning

  void validate() const;
};

struct ProblemInstance {
  Signal observation;
  FilterSpec filter;
  SpoqParams spoq;
  BoxSet box;
  int kernel_len = 21;
  std::optional<Kernel> known_kernel;  // required when solving non-blind

  void validate() const;
};

enum class StopReason { tolerance, max_iter };

// Everything the descent/TR invariants need, recorded every outer iteration.
struct IterationDiagnostics {
  double lambda1 = 0.0;  // Lipschitz bound of the signal-block gradient
  double lambda2 = 0.0;  // kernel block; 0 when the update is skipped
  int tr_trials = 0;
  double rho_first = 0.0;
  double rho_accepted = 0.0;
  double sum_q_prev = 0.0;      // sum |s_k|^q before the update (= rho_first)
  double sum_q_accepted = 0.0;  // sum |s_{k+1}|^q of the accepted iterate
  bool in_ball = false;
  double metric_min = 0.0;
  double metric_max = 0.0;
  double delta_s_norm = 0.0;
  double delta_pi_norm = 0.0;
  double omega_after_signal = 0.0;
  double omega_after_kernel = 0.0;
  // Certificate values: decrease = step'grad + gamma^{-1}||step||_A^2 (<= 0),
  // residual = min over the normal cone of ||grad + r||, bound = its cap.
  double cert_s_decrease = 0.0;
  double cert_s_residual = 0.0;
  double cert_s_bound = 0.0;
  bool cert_s_ok = true;
  double cert_pi_decrease = 0.0;
  double cert_pi_residual = 0.0;
  double cert_pi_bound = 0.0;
  bool cert_pi_ok = true;
};

struct SolveResult {
  Signal s_hat;
  Kernel pi_hat;
  Signal t_hat;
  std::vector<double> objective_trace;  // initial value, then one per block update
  int iterations = 0;
  std::vector<int> tr_trials_per_iter;
  StopReason stop_reason = StopReason::max_iter;
  std::vector<IterationDiagnostics> diagnostics;
};

// Binds an instance to its cached filter operator and exposes the objective,
// the block gradients and the Lipschitz bounds of the data-fidelity term
//   f(s, pi) = 0.5*||H(y - pi*s)||^2 + lambda*psi(s).
class Problem {
 public:
  explicit Problem(ProblemInstance instance);

  const ProblemInstance& instance() const { return instance_; }
  const LowpassOperator& filter() const { return filter_; }
  int n_samples() const { return static_cast<int>(instance_.observation.size()); }

  double objective(const Signal& s, const Kernel& pi) const;
  Signal grad_signal(const Signal& s, const Kernel& pi) const;
  Kernel grad_kernel(const Signal& s, const Kernel& pi) const;

  // Upper bounds on the squared operator norms of H o C_pi and H o D_s via
  // power iteration (rel. tol 1e-6, <= 200 sweeps, 1.01 safety, 1e-12 floor).
  // warm, when given, seeds the iteration and receives the final vector.
  double lipschitz_signal(const Kernel& pi, Signal* warm = nullptr) const;
  double lipschitz_kernel(const Signal& s, Kernel* warm = nullptr) const;

 private:
  ProblemInstance instance_;
  LowpassOperator filter_;
};

struct SignalStep {
  Signal s_next;
  int trials = 0;
  double rho_first = 0.0;
  double rho_accepted = 0.0;
  bool in_ball = false;
  double metric_min = 0.0;
  double metric_max = 0.0;
  double cert_decrease = 0.0;
  double cert_residual = 0.0;
  double cert_bound = 0.0;
  bool cert_ok = true;
};

struct KernelStep {
  Kernel pi_next;
  double cert_decrease = 0.0;
  double cert_residual = 0.0;
  double cert_bound = 0.0;
  bool cert_ok = true;
};

// One trust-region MM signal update: shrinks the radius until the projected
// variable-metric step lands in the lq-ball complement, then checks the
// first-order certificates.
SignalStep signal_update(const Problem& problem, const Signal& s,
                         const Kernel& pi, double lambda1,
                         const Signal& grad, const SolverConfig& config);

// One projected gradient step on the kernel with scalar metric lambda2.
KernelStep kernel_update(const Problem& problem, const Signal& s,
                         const Kernel& pi, double lambda2,
                         const Kernel& grad, const SolverConfig& config);

SolveResult solve(const Problem& problem, const SolverConfig& config,
                  const std::optional<Signal>& s0 = std::nullopt,
                  const std::optional<Kernel>& pi0 = std::nullopt);

// Aligns the kernel's center of mass with its central tap and shifts the
// signal oppositely; the convolution is unchanged away from the borders.
std::pair<Signal, Kernel> center_shift_postprocess(const Signal& s_hat,
                                                   const Kernel& pi_hat);

}  // namespace pendantss

#endif
