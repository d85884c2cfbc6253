#include "bci/forward_model.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "bci/covariance.hpp"
#include "bci/errors.hpp"
#include "bci/field_sampler.hpp"

namespace bci {

namespace {

/// Poisson means lambda_j = target * e^{beta_j} / sum_l e^{beta_l},
/// normalized so sum lambda = target (the expected total count).
Eigen::VectorXd poisson_means(const Eigen::VectorXd& beta, int target) {
  const double shift = beta.maxCoeff();
  Eigen::VectorXd w = (beta.array() - shift).exp();
  return target * w / w.sum();
}

}  // namespace

BinCounts bin_data(const Eigen::VectorXd& x, const GridConfig& grid) {
  const int m = grid.n_bins();
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(m);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    if (!(xi >= 0.0 && xi <= 1.0))
      throw Error("bin_data: value outside [0,1]; rescale first");
    const int j = std::min(m - 1, static_cast<int>(std::floor(xi * m)));
    ++counts[j];
  }
  return BinCounts{std::move(counts)};
}

LabeledPair sample_pair(const ForwardConfig& cfg) {
  if (cfg.noise_variance < 0.0)
    throw Error("sample_pair: noise_variance must be non-negative");
  if (cfg.target_samples < 1)
    throw Error("sample_pair: target_samples must be >= 1");

  const GridConfig grid(cfg.n_bins);
  const CovarianceMatrix beta_cov =
      build_grid_covariance(cfg.beta_spectrum, grid);
  const CovarianceMatrix f_cov = build_grid_covariance(cfg.f_spectrum, grid);
  const int m = grid.n_bins();

  std::mt19937_64 engine(cfg.seed);

  // Cause side: field -> intensities -> counts. A draw may come up empty
  // (N is Poisson around the target); retry with the advanced generator.
  Eigen::VectorXi counts(m);
  int total = 0;
  constexpr int kMaxAttempts = 100;
  for (int attempt = 0; attempt < kMaxAttempts && total == 0; ++attempt) {
    const Eigen::VectorXd beta =
        beta_cov.llt().matrixL() * standard_normal(m, engine);
    const Eigen::VectorXd lambda = poisson_means(beta, cfg.target_samples);
    total = 0;
    for (int j = 0; j < m; ++j) {
      if (lambda[j] > 0.0) {
        std::poisson_distribution<int> poisson(lambda[j]);
        counts[j] = poisson(engine);
      } else {
        counts[j] = 0;
      }
      total += counts[j];
    }
  }
  if (total == 0)
    throw Error("sample_pair: no samples after 100 attempts "
                "(pathological intensity)");

  const int n = total;
  Eigen::VectorXd x(n);
  std::vector<int> bin_of(n);
  for (int j = 0, i = 0; j < m; ++j)
    for (int c = 0; c < counts[j]; ++c, ++i) {
      x[i] = grid.midpoint(j);
      bin_of[i] = j;
    }

  // Effect side: curve sample rescaled onto [0,1]. A zero-range draw has
  // probability zero; retry against it anyway.
  Eigen::VectorXd f_scaled;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const Eigen::VectorXd f =
        f_cov.llt().matrixL() * standard_normal(m, engine);
    const double lo = f.minCoeff();
    const double hi = f.maxCoeff();
    if (hi > lo) {
      f_scaled = (f.array() - lo) / (hi - lo);
      break;
    }
  }
  if (f_scaled.size() == 0)
    throw Error("sample_pair: constant effect curve after 100 attempts");

  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = f_scaled[bin_of[i]];
  const Eigen::VectorXd noise =
      std::sqrt(cfg.noise_variance) * standard_normal(n, engine);
  y += noise;

  std::bernoulli_distribution swap(0.5);
  if (swap(engine)) return LabeledPair{y, x, Direction::y_to_x};
  return LabeledPair{x, y, Direction::x_to_y};
}

}  // namespace bci
