#ifndef BCI_INFERENCE_HPP
#define BCI_INFERENCE_HPP

#include <optional>

#include <Eigen/Core>

#include "bci/cause_model.hpp"
#include "bci/direction.hpp"
#include "bci/effect_model.hpp"
#include "bci/grid.hpp"
#include "bci/power_spectrum.hpp"
#include "bci/rescale.hpp"

namespace bci {

/// Hyperparameters of the direction decision. The defaults are the
/// recommended operating point: spectra proportional to 1/(q^4+1), noise
/// variance 0.01, 512 bins, rho = 1. The cause-field amplitude is large so
/// the log-density can follow heavily discretized data; the kernel
/// amplitude stays moderate to keep the regression informative at small N.
struct InferenceConfig {
  GridConfig grid{512};
  PowerSpectrum beta_spectrum{1e6, 4.0};
  PowerSpectrum f_spectrum{1000.0, 4.0};
  double noise_variance = 0.01;
  double rho = 1.0;
  std::optional<double> newton_tolerance{};
  int max_newton_iterations = 100;
  std::optional<int> kernel_modes{};  ///< defaults to grid.n_bins()
};

/// All Hamiltonian terms of one candidate direction (the diagnostic view:
/// smaller totals favor the direction).
struct HamiltonianBreakdown {
  Direction direction = Direction::x_to_y;
  CausePosterior cause;
  EffectLikelihood effect;
  double direction_total = 0.0;  ///< cause.total + effect.total
};

struct InferenceResult {
  /// H(d|Y->X) - H(d|X->Y) in natural log; positive favors X->Y.
  double log_odds = 0.0;
  /// X->Y iff log_odds > 0; an exact tie resolves to Y->X.
  Direction decided_direction = Direction::y_to_x;
  HamiltonianBreakdown breakdown_xy;
  HamiltonianBreakdown breakdown_yx;
};

/// Evaluates both directional Hamiltonians for two-column data and decides
/// the causal direction from their difference. Construction precomputes the
/// grid covariance and its factorizations; the engine itself is immutable
/// and safe to share across threads.
class InferenceEngine {
 public:
  explicit InferenceEngine(InferenceConfig config);

  const InferenceConfig& config() const { return config_; }
  const CauseModel& cause_model() const { return cause_model_; }
  const EffectModelConfig& effect_config() const { return effect_config_; }

  /// Both columns must already be rescaled to [0,1]. `label` names the
  /// hypothesis "cause column causes effect column" for reporting.
  HamiltonianBreakdown directional_hamiltonian(const Eigen::VectorXd& cause,
                                               const Eigen::VectorXd& effect,
                                               Direction label) const;

  /// Rescales the raw columns, evaluates both directions and decides.
  InferenceResult infer(const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y) const;

 private:
  InferenceConfig config_;
  CauseModel cause_model_;
  EffectModelConfig effect_config_;
};

/// One-shot convenience wrapper around InferenceEngine.
InferenceResult infer_direction(const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y,
                                const InferenceConfig& config);

}  // namespace bci

#endif  // BCI_INFERENCE_HPP
