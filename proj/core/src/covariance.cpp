#include "bci/covariance.hpp"

#include <cmath>
#include <numbers>

#include "bci/errors.hpp"

namespace bci {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_symmetric(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols())
    throw Error("CovarianceMatrix: matrix must be square");
  const double scale = 1.0 + a.cwiseAbs().maxCoeff();
  const double skew = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (skew > 1e-12 * scale)
    throw Error("CovarianceMatrix: matrix is not symmetric");
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
  check_symmetric(entries_);
  const Eigen::Index m = entries_.rows();
  if (m < 1) throw Error("CovarianceMatrix: empty matrix");

  llt_.compute(entries_);
  if (llt_.info() != Eigen::Success) {
    // Jitter policy: 1e-12 * trace/m on the diagonal, three retries with
    // tenfold escalation, then give up.
    const double base = 1e-12 * entries_.trace() / static_cast<double>(m);
    double shift = base;
    for (int retry = 0; retry < 3; ++retry, shift *= 10.0) {
      Eigen::MatrixXd shifted = entries_;
      shifted.diagonal().array() += shift;
      llt_.compute(shifted);
      if (llt_.info() == Eigen::Success) {
        entries_ = std::move(shifted);
        jitter_ = shift;
        break;
      }
    }
    if (llt_.info() != Eigen::Success)
      throw FactorizationError(
          "CovarianceMatrix: Cholesky failed after maximum jitter");
  }

  log_det_ = 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
}

Eigen::MatrixXd CovarianceMatrix::inverse() const {
  return llt_.solve(Eigen::MatrixXd::Identity(size(), size()));
}

CovarianceMatrix build_circulant_covariance(const Eigen::VectorXd& mode_power,
                                            const GridConfig& grid) {
  const int m = grid.n_bins();
  if (mode_power.size() != m)
    throw Error("build_circulant_covariance: need one value per mode");
  if ((mode_power.array() <= 0.0).any())
    throw Error("build_circulant_covariance: spectrum must be positive");

  // First row c_d = (1/m) sum_k P_k cos(2 pi k d / m), computed for
  // d <= m/2 and mirrored so the assembled matrix is exactly symmetric.
  Eigen::VectorXd row(m);
  for (int d = 0; d <= m / 2; ++d) {
    double acc = 0.0;
    for (int k = 0; k < m; ++k)
      acc += mode_power[k] * std::cos(kTwoPi * k * d / m);
    row[d] = acc / m;
    if (d > 0 && d < m) row[m - d] = row[d];
  }

  Eigen::MatrixXd b(m, m);
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l) b(j, l) = row[(j - l + m) % m];
  return CovarianceMatrix(std::move(b));
}

CovarianceMatrix build_grid_covariance(const PowerSpectrum& spectrum,
                                       const GridConfig& grid) {
  const int m = grid.n_bins();
  Eigen::VectorXd mode_power(m);
  for (int k = 0; k < m; ++k) mode_power[k] = spectrum(fold_mode(k, m));
  return build_circulant_covariance(mode_power, grid);
}

double covariance_at(const PowerSpectrum& spectrum, double s, double t,
                     int n_modes) {
  if (n_modes < 1) throw Error("covariance_at: need at least one mode");
  if (s < 0.0 || s > 1.0 || t < 0.0 || t > 1.0)
    throw Error("covariance_at: arguments must lie in [0,1]");
  const double lag = s - t;
  double acc = 0.0;
  for (int k = 0; k < n_modes; ++k) {
    const int q = fold_mode(k, n_modes);
    acc += spectrum(q) * std::cos(kTwoPi * q * lag);
  }
  return acc / n_modes;
}

}  // namespace bci
