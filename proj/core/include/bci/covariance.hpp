#ifndef BCI_COVARIANCE_HPP
#define BCI_COVARIANCE_HPP

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "bci/grid.hpp"
#include "bci/power_spectrum.hpp"

namespace bci {

/// Symmetric positive-definite covariance with an eagerly computed Cholesky
/// factorization and log-determinant. Immutable after construction, safe to
/// share across threads.
class CovarianceMatrix {
 public:
  /// Validates symmetry (1e-12 relative) and factorizes. If the plain
  /// Cholesky reports a numerical issue, a jitter of 1e-12 * trace/m is
  /// added to the diagonal, escalating tenfold for at most three retries
  /// before giving up with FactorizationError.
  explicit CovarianceMatrix(Eigen::MatrixXd entries);

  Eigen::Index size() const { return entries_.rows(); }
  const Eigen::MatrixXd& matrix() const { return entries_; }
  const Eigen::LLT<Eigen::MatrixXd>& llt() const { return llt_; }

  /// log |A|, from the Cholesky diagonal.
  double log_det() const { return log_det_; }

  /// A^{-1} rhs via the cached factorization.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    return llt_.solve(rhs);
  }

  /// Dense A^{-1} via the cached factorization.
  Eigen::MatrixXd inverse() const;

  /// Total diagonal shift applied during factorization; 0 in the normal case.
  double jitter() const { return jitter_; }

 private:
  Eigen::MatrixXd entries_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double log_det_ = 0.0;
  double jitter_ = 0.0;
};

/// Folds a raw index k in [0, n_modes) to the integer Fourier mode
/// q_k = min(k, n_modes - k) of the real spectrum on a periodic unit
/// interval.
inline int fold_mode(int k, int n_modes) {
  return k < n_modes - k ? k : n_modes - k;
}

/// Circulant covariance on an equidistant grid from per-mode spectral
/// values: B_{jl} = (1/m) sum_k mode_power[k] cos(2 pi k (j-l)/m).
///
/// The normalization makes a flat spectrum yield the identity. The matrix is
/// assembled from its first row, so circulant structure and symmetry hold
/// bit-exactly.
CovarianceMatrix build_circulant_covariance(const Eigen::VectorXd& mode_power,
                                            const GridConfig& grid);

/// Grid covariance for the spectrum evaluated at folded integer modes,
/// mode_power[k] = P(min(k, m-k)).
CovarianceMatrix build_grid_covariance(const PowerSpectrum& spectrum,
                                       const GridConfig& grid);

/// Stationary kernel at continuous arguments s, t in [0,1]:
/// F(s,t) = (1/K) sum_{k=0}^{K-1} P(q_k) cos(2 pi q_k (s-t)),
/// with the same folded-mode convention as the grid covariance. Coincides
/// with the grid covariance entries when s, t are midpoints and K = n_bins.
double covariance_at(const PowerSpectrum& spectrum, double s, double t,
                     int n_modes);

}  // namespace bci

#endif  // BCI_COVARIANCE_HPP
