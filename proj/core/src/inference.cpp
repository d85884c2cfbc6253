#include "bci/inference.hpp"

#include <utility>

#include "bci/errors.hpp"

namespace bci {

namespace {

CauseModel make_cause_model(const InferenceConfig& cfg) {
  CauseModelConfig cause_cfg;
  cause_cfg.rho = cfg.rho;
  cause_cfg.newton_tolerance = cfg.newton_tolerance;
  cause_cfg.max_newton_iterations = cfg.max_newton_iterations;
  return CauseModel(build_grid_covariance(cfg.beta_spectrum, cfg.grid),
                    cause_cfg);
}

EffectModelConfig make_effect_config(const InferenceConfig& cfg) {
  EffectModelConfig effect_cfg;
  effect_cfg.f_spectrum = cfg.f_spectrum;
  effect_cfg.noise_variance = cfg.noise_variance;
  effect_cfg.kernel_modes = cfg.kernel_modes.value_or(cfg.grid.n_bins());
  return effect_cfg;
}

}  // namespace

InferenceEngine::InferenceEngine(InferenceConfig config)
    : config_(std::move(config)),
      cause_model_(make_cause_model(config_)),
      effect_config_(make_effect_config(config_)) {
  if (!(config_.noise_variance > 0.0))
    throw Error("InferenceEngine: noise_variance must be positive");
}

HamiltonianBreakdown InferenceEngine::directional_hamiltonian(
    const Eigen::VectorXd& cause, const Eigen::VectorXd& effect,
    Direction label) const {
  HamiltonianBreakdown breakdown;
  breakdown.direction = label;
  breakdown.cause = cause_hamiltonian(cause, config_.grid, cause_model_);
  breakdown.effect = effect_hamiltonian(cause, effect, effect_config_);
  breakdown.direction_total = breakdown.cause.total + breakdown.effect.total;
  return breakdown;
}

InferenceResult InferenceEngine::infer(const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& y) const {
  const Eigen::VectorXd xr = rescale_column(x);
  const Eigen::VectorXd yr = rescale_column(y);

  InferenceResult result;
  try {
    result.breakdown_xy = directional_hamiltonian(xr, yr, Direction::x_to_y);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string("direction X->Y: ") + e.what(),
                           e.last_iterate, e.gradient_norm);
  }
  try {
    result.breakdown_yx = directional_hamiltonian(yr, xr, Direction::y_to_x);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string("direction Y->X: ") + e.what(),
                           e.last_iterate, e.gradient_norm);
  }

  result.log_odds = result.breakdown_yx.direction_total -
                    result.breakdown_xy.direction_total;
  // O > 1 decides X->Y; an exact tie falls to Y->X.
  result.decided_direction =
      result.log_odds > 0.0 ? Direction::x_to_y : Direction::y_to_x;
  return result;
}

InferenceResult infer_direction(const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y,
                                const InferenceConfig& config) {
  return InferenceEngine(config).infer(x, y);
}

}  // namespace bci
