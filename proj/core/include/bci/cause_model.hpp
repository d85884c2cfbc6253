#ifndef BCI_CAUSE_MODEL_HPP
#define BCI_CAUSE_MODEL_HPP

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "bci/covariance.hpp"
#include "bci/forward_model.hpp"
#include "bci/grid.hpp"

namespace bci {

/// Tuning of the cause-side evidence evaluation.
struct CauseModelConfig {
  double rho = 1.0;
  /// Infinity-norm gradient tolerance for the Newton solver. When unset,
  /// the default 1e-8 * max(1, N) is used, scaling with the data term.
  std::optional<double> newton_tolerance{};
  int max_newton_iterations = 100;
};

/// The five data-dependent terms of the Laplace-approximated cause
/// Hamiltonian. Direction-independent constants are dropped since they
/// cancel in the Bayes factor.
struct CauseHamiltonianTerms {
  double half_logdet = 0.0;      ///< 0.5 log|rho B diag(e^beta0) + I|
  double log_k_factorial = 0.0;  ///< sum_j log k_j!
  double minus_k_beta = 0.0;     ///< -k . beta0
  double rho_exp = 0.0;          ///< rho sum_j e^{beta0_j}
  double prior_quad = 0.0;       ///< 0.5 beta0 . B^{-1} beta0
};

/// Newton minimizer output for the convex energy gamma.
struct NewtonResult {
  Eigen::VectorXd beta0;
  double gradient_norm = 0.0;
  int iterations = 0;
  /// gamma at the initializer and after each accepted step; strictly
  /// decreasing.
  std::vector<double> gamma_trace;
  bool exp_clamped = false;
};

/// Minimizer plus assembled Hamiltonian for one dataset.
struct CausePosterior {
  Eigen::VectorXd beta0;
  double gradient_norm_at_solution = 0.0;
  int iterations = 0;
  bool exp_clamped = false;
  CauseHamiltonianTerms terms;
  double total = 0.0;  ///< sum of the five terms
};

/// 0.5 log|rho B diag(e^beta0) + I|, via LU with the determinant sign
/// asserted positive (the matrix is similar to a positive definite one).
double cause_half_logdet(const CovarianceMatrix& beta_covariance,
                         const Eigen::VectorXd& beta0, double rho);

/// Evaluates the cause-side marginal likelihood for bin counts under a
/// Gaussian field prior with covariance B: minimizes the convex energy
///
///   gamma(beta) = -k.beta + rho sum_j e^{beta_j} + 0.5 beta.B^{-1}beta
///
/// by damped Newton iteration and assembles the Laplace-approximated
/// Hamiltonian around the minimizer. Pure and safe for concurrent use on
/// distinct datasets; B^{-1} is materialized once at construction.
class CauseModel {
 public:
  explicit CauseModel(CovarianceMatrix beta_covariance,
                      CauseModelConfig config = {});

  const CovarianceMatrix& beta_covariance() const { return covariance_; }
  const CauseModelConfig& config() const { return config_; }
  Eigen::Index n_bins() const { return covariance_.size(); }

  /// gamma(beta) for the given counts. Exponentials are clamped at
  /// |beta| = 700 against IEEE overflow; the event is reported through the
  /// optional flag.
  double gamma(const Eigen::VectorXd& beta, const BinCounts& counts,
               bool* clamped = nullptr) const;

  /// Gradient -k + rho e^beta + B^{-1} beta.
  Eigen::VectorXd gamma_gradient(const Eigen::VectorXd& beta,
                                 const BinCounts& counts,
                                 bool* clamped = nullptr) const;

  /// Curvature diag(rho e^beta) + B^{-1}; positive definite for any beta.
  Eigen::MatrixXd gamma_curvature(const Eigen::VectorXd& beta,
                                  bool* clamped = nullptr) const;

  /// Damped Newton descent from beta = 0 with backtracking line search.
  /// Throws ConvergenceError when the gradient tolerance is not met within
  /// the iteration budget.
  NewtonResult minimize_beta(const BinCounts& counts) const;

  /// Minimizes gamma and assembles the five Hamiltonian terms.
  CausePosterior hamiltonian(const BinCounts& counts) const;

 private:
  double effective_tolerance(const BinCounts& counts) const;

  CovarianceMatrix covariance_;
  Eigen::MatrixXd covariance_inverse_;
  CauseModelConfig config_;
};

/// Convenience entry point: bins x (already in [0,1]) on the grid and
/// evaluates the cause Hamiltonian.
CausePosterior cause_hamiltonian(const Eigen::VectorXd& x,
                                 const GridConfig& grid,
                                 const CauseModel& model);

}  // namespace bci

#endif  // BCI_CAUSE_MODEL_HPP
