#ifndef BCI_EFFECT_MODEL_HPP
#define BCI_EFFECT_MODEL_HPP

#include <Eigen/Core>

#include "bci/power_spectrum.hpp"

namespace bci {

/// Tuning of the effect-side conditional marginal likelihood.
struct EffectModelConfig {
  PowerSpectrum f_spectrum{1000.0, 4.0};
  double noise_variance = 0.01;  ///< > 0; regularizes duplicated x values
  int kernel_modes = 512;        ///< truncation K of the cosine kernel series
};

/// Gram matrix of the stationary kernel at the sample positions,
/// G_{ij} = covariance_at(f_spectrum, x_i, x_j, K). Symmetric and positive
/// semi-definite by construction (finite non-negative cosine expansion).
Eigen::MatrixXd gram_matrix(const Eigen::VectorXd& x,
                            const EffectModelConfig& cfg);

/// Negative log of the closed-form Gaussian marginal
/// N(y | 0, G + noise I), split into its three terms.
struct EffectLikelihood {
  double half_logdet = 0.0;   ///< 0.5 log|G + noise I|
  double quad = 0.0;          ///< 0.5 y.(G + noise I)^{-1} y
  double gauss_const = 0.0;   ///< (N/2) log 2 pi
  double total = 0.0;         ///< sum of the three
};

/// Evaluates the effect Hamiltonian H(y|x) by Cholesky factorization of
/// G + noise I. Requires matching lengths, finite values and x in [0,1].
EffectLikelihood effect_hamiltonian(const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y,
                                    const EffectModelConfig& cfg);

}  // namespace bci

#endif  // BCI_EFFECT_MODEL_HPP
