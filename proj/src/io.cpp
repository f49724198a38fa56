#include "pendantss/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

namespace pendantss {

namespace {

template <typename T>
void get_opt(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) it->get_to(out);
}

}  // namespace

void to_json(json& j, const DatasetSpec& spec) {
  j = json{{"n_samples", spec.n_samples},
           {"kernel_len", spec.kernel_len},
           {"kernel_sigma", spec.kernel_sigma},
           {"n_spikes", spec.n_spikes},
           {"noise_frac", spec.noise_frac},
           {"seed", spec.seed},
           {"amplitude_low", spec.amplitude_low},
           {"amplitude_high", spec.amplitude_high},
           {"min_separation", spec.min_separation}};
}

void from_json(const json& j, DatasetSpec& spec) {
  spec = DatasetSpec{};
  get_opt(j, "n_samples", spec.n_samples);
  get_opt(j, "kernel_len", spec.kernel_len);
  get_opt(j, "kernel_sigma", spec.kernel_sigma);
  get_opt(j, "n_spikes", spec.n_spikes);
  get_opt(j, "noise_frac", spec.noise_frac);
  get_opt(j, "seed", spec.seed);
  get_opt(j, "amplitude_low", spec.amplitude_low);
  get_opt(j, "amplitude_high", spec.amplitude_high);
  get_opt(j, "min_separation", spec.min_separation);
}

void to_json(json& j, const FilterSpec& spec) {
  j = json{{"cutoff_bin", spec.cutoff_bin},
           {"transition_bins", spec.transition_bins}};
}

void from_json(const json& j, FilterSpec& spec) {
  spec = FilterSpec{};
  get_opt(j, "cutoff_bin", spec.cutoff_bin);
  get_opt(j, "transition_bins", spec.transition_bins);
}

void to_json(json& j, const SpoqParams& params) {
  j = json{{"p", params.p},         {"q", params.q},
           {"alpha", params.alpha}, {"beta", params.beta},
           {"eta", params.eta},     {"lambda", params.lambda}};
}

void from_json(const json& j, SpoqParams& params) {
  params = SpoqParams{};
  get_opt(j, "p", params.p);
  get_opt(j, "q", params.q);
  get_opt(j, "alpha", params.alpha);
  get_opt(j, "beta", params.beta);
  get_opt(j, "eta", params.eta);
  get_opt(j, "lambda", params.lambda);
}

void to_json(json& j, const SolverConfig& config) {
  j = json{{"theta", config.theta},
           {"max_tr_trials", config.max_tr_trials},
           {"gamma_s", config.gamma_s},
           {"gamma_pi", config.gamma_pi},
           {"epsilon", config.epsilon},
           {"k_max", config.k_max},
           {"blind", config.blind},
           {"kappa1", config.kappa1},
           {"kappa2", config.kappa2}};
}

void from_json(const json& j, SolverConfig& config) {
  config = SolverConfig{};
  get_opt(j, "theta", config.theta);
  get_opt(j, "max_tr_trials", config.max_tr_trials);
  get_opt(j, "gamma_s", config.gamma_s);
  get_opt(j, "gamma_pi", config.gamma_pi);
  get_opt(j, "epsilon", config.epsilon);
  get_opt(j, "k_max", config.k_max);
  get_opt(j, "blind", config.blind);
  get_opt(j, "kappa1", config.kappa1);
  get_opt(j, "kappa2", config.kappa2);
}

void to_json(json& j, const BoxSet& box) {
  j = json{{"lower", box.lower}, {"upper", box.upper}};
}

void from_json(const json& j, BoxSet& box) {
  box = BoxSet{};
  get_opt(j, "lower", box.lower);
  get_opt(j, "upper", box.upper);
}

void to_json(json& j, const GridSpec& grid) {
  j = json{{"lambda_values", grid.lambda_values},
           {"beta_values", grid.beta_values},
           {"eta_values", grid.eta_values},
           {"pq_pairs", grid.pq_pairs}};
}

void from_json(const json& j, GridSpec& grid) {
  grid = GridSpec{};
  get_opt(j, "lambda_values", grid.lambda_values);
  get_opt(j, "beta_values", grid.beta_values);
  get_opt(j, "eta_values", grid.eta_values);
  get_opt(j, "pq_pairs", grid.pq_pairs);
}

void to_json(json& j, const MetricsReport& report) {
  j = json{{"snr_s", report.snr_s},
           {"tsnr_s", report.tsnr_s},
           {"snr_t", report.snr_t},
           {"snr_pi", report.snr_pi},
           {"weighted", report.weighted}};
}

void from_json(const json& j, MetricsReport& report) {
  report = MetricsReport{};
  get_opt(j, "snr_s", report.snr_s);
  get_opt(j, "tsnr_s", report.tsnr_s);
  get_opt(j, "snr_t", report.snr_t);
  get_opt(j, "snr_pi", report.snr_pi);
  get_opt(j, "weighted", report.weighted);
}

void to_json(json& j, const IterationDiagnostics& diag) {
  j = json{{"lambda1", diag.lambda1},
           {"lambda2", diag.lambda2},
           {"tr_trials", diag.tr_trials},
           {"rho_first", diag.rho_first},
           {"rho_accepted", diag.rho_accepted},
           {"sum_q_prev", diag.sum_q_prev},
           {"sum_q_accepted", diag.sum_q_accepted},
           {"in_ball", diag.in_ball},
           {"metric_min", diag.metric_min},
           {"metric_max", diag.metric_max},
           {"delta_s_norm", diag.delta_s_norm},
           {"delta_pi_norm", diag.delta_pi_norm},
           {"omega_after_signal", diag.omega_after_signal},
           {"omega_after_kernel", diag.omega_after_kernel},
           {"cert_s_decrease", diag.cert_s_decrease},
           {"cert_s_residual", diag.cert_s_residual},
           {"cert_s_bound", diag.cert_s_bound},
           {"cert_s_ok", diag.cert_s_ok},
           {"cert_pi_decrease", diag.cert_pi_decrease},
           {"cert_pi_residual", diag.cert_pi_residual},
           {"cert_pi_bound", diag.cert_pi_bound},
           {"cert_pi_ok", diag.cert_pi_ok}};
}

void from_json(const json& j, IterationDiagnostics& diag) {
  diag = IterationDiagnostics{};
  get_opt(j, "lambda1", diag.lambda1);
  get_opt(j, "lambda2", diag.lambda2);
  get_opt(j, "tr_trials", diag.tr_trials);
  get_opt(j, "rho_first", diag.rho_first);
  get_opt(j, "rho_accepted", diag.rho_accepted);
  get_opt(j, "sum_q_prev", diag.sum_q_prev);
  get_opt(j, "sum_q_accepted", diag.sum_q_accepted);
  get_opt(j, "in_ball", diag.in_ball);
  get_opt(j, "metric_min", diag.metric_min);
  get_opt(j, "metric_max", diag.metric_max);
  get_opt(j, "delta_s_norm", diag.delta_s_norm);
  get_opt(j, "delta_pi_norm", diag.delta_pi_norm);
  get_opt(j, "omega_after_signal", diag.omega_after_signal);
  get_opt(j, "omega_after_kernel", diag.omega_after_kernel);
  get_opt(j, "cert_s_decrease", diag.cert_s_decrease);
  get_opt(j, "cert_s_residual", diag.cert_s_residual);
  get_opt(j, "cert_s_bound", diag.cert_s_bound);
  get_opt(j, "cert_s_ok", diag.cert_s_ok);
  get_opt(j, "cert_pi_decrease", diag.cert_pi_decrease);
  get_opt(j, "cert_pi_residual", diag.cert_pi_residual);
  get_opt(j, "cert_pi_bound", diag.cert_pi_bound);
  get_opt(j, "cert_pi_ok", diag.cert_pi_ok);
}

void to_json(json& j, const SolveResult& result) {
  j = json{{"s_hat", result.s_hat},
           {"pi_hat", result.pi_hat},
           {"t_hat", result.t_hat},
           {"objective_trace", result.objective_trace},
           {"iterations", result.iterations},
           {"tr_trials_per_iter", result.tr_trials_per_iter},
           {"stop_reason", result.stop_reason == StopReason::tolerance
                               ? "tolerance"
                               : "max_iter"},
           {"diagnostics", result.diagnostics}};
}

void from_json(const json& j, SolveResult& result) {
  result = SolveResult{};
  get_opt(j, "s_hat", result.s_hat);
  get_opt(j, "pi_hat", result.pi_hat);
  get_opt(j, "t_hat", result.t_hat);
  get_opt(j, "objective_trace", result.objective_trace);
  get_opt(j, "iterations", result.iterations);
  get_opt(j, "tr_trials_per_iter", result.tr_trials_per_iter);
  std::string reason = "max_iter";
  get_opt(j, "stop_reason", reason);
  result.stop_reason =
      reason == "tolerance" ? StopReason::tolerance : StopReason::max_iter;
  get_opt(j, "diagnostics", result.diagnostics);
}

json dataset_to_json(const DatasetSpec& spec, const GroundTruth& truth,
                     const Signal& observation) {
  return json{{"spec", spec},
              {"spikes", truth.spikes},
              {"kernel", truth.kernel},
              {"trend", truth.trend},
              {"noise_sigma", truth.noise_sigma},
              {"observation", observation}};
}

void dataset_from_json(const json& j, DatasetSpec& spec, GroundTruth& truth,
                       Signal& observation) {
  j.at("spec").get_to(spec);
  truth = GroundTruth{};
  j.at("spikes").get_to(truth.spikes);
  j.at("kernel").get_to(truth.kernel);
  j.at("trend").get_to(truth.trend);
  j.at("noise_sigma").get_to(truth.noise_sigma);
  j.at("observation").get_to(observation);
  for (std::size_t i = 0; i < truth.spikes.size(); ++i)
    if (truth.spikes[i] != 0.0) truth.support.push_back(static_cast<int>(i));
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw IoError("malformed JSON in " + path.string() + ": " + err.what());
  }
  return j;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << contents;
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move " + tmp.string() + " to " + path.string() +
                  ": " + ec.message());
  }
}

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace pendantss
