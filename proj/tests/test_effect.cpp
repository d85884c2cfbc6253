#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include <doctest.h>

#include "bci/covariance.hpp"
#include "bci/effect_model.hpp"
#include "bci/errors.hpp"

using namespace bci;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

EffectModelConfig small_config(int k_modes = 16, double noise = 0.25) {
  EffectModelConfig cfg;
  cfg.f_spectrum = PowerSpectrum(1.0, 4.0);
  cfg.noise_variance = noise;
  cfg.kernel_modes = k_modes;
  return cfg;
}

Eigen::VectorXd random_positions(int n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = uniform(engine);
  return x;
}

}  // namespace

TEST_CASE("gram matrix of identical positions is rank one") {
  const EffectModelConfig cfg = small_config();
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(4, 0.37);
  const Eigen::MatrixXd g = gram_matrix(x, cfg);
  const double zero_lag = covariance_at(cfg.f_spectrum, 0.37, 0.37, 16);
  CHECK((g.array() - zero_lag).abs().maxCoeff() < 1e-12 * zero_lag);
  // every entry is the same dot product, so the matrix is exactly constant
  CHECK(g(0, 0) == g(3, 1));
}

TEST_CASE("gram matrix entries match the direct cosine-sum kernel") {
  EffectModelConfig cfg = small_config();
  cfg.f_spectrum = PowerSpectrum(1000.0, 4.0);
  Eigen::VectorXd x(2);
  x << 0.2, 0.8;
  const Eigen::MatrixXd g = gram_matrix(x, cfg);

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double oracle = 0.0;
      for (int k = 0; k < 16; ++k) {
        const int q = std::min(k, 16 - k);
        oracle += cfg.f_spectrum(q) * std::cos(kTwoPi * q * (x[i] - x[j]));
      }
      oracle /= 16;
      CHECK(g(i, j) == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("gram matrix agrees with covariance_at for random positions") {
  EffectModelConfig cfg = small_config(32);
  cfg.f_spectrum = PowerSpectrum(50.0, 4.0);
  const Eigen::VectorXd x = random_positions(6, 41);
  const Eigen::MatrixXd g = gram_matrix(x, cfg);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(std::abs(g(i, j) -
                     covariance_at(cfg.f_spectrum, x[i], x[j], 32)) < 1e-11);
  CHECK((g - Eigen::MatrixXd(g.transpose())).cwiseAbs().maxCoeff() == 0.0);  // symmetric by construction
}

TEST_CASE("odd mode counts fold correctly") {
  EffectModelConfig cfg = small_config(9);
  const Eigen::VectorXd x = random_positions(4, 43);
  const Eigen::MatrixXd g = gram_matrix(x, cfg);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(g(i, j) -
                     covariance_at(cfg.f_spectrum, x[i], x[j], 9)) < 1e-13);
}

TEST_CASE("single point likelihood matches 1x1 algebra") {
  const EffectModelConfig cfg = small_config();
  Eigen::VectorXd x(1), y(1);
  x << 0.4;
  y << 0.8;
  const EffectLikelihood like = effect_hamiltonian(x, y, cfg);
  const double variance =
      covariance_at(cfg.f_spectrum, 0.4, 0.4, 16) + cfg.noise_variance;
  CHECK(like.half_logdet == doctest::Approx(0.5 * std::log(variance)));
  CHECK(like.quad == doctest::Approx(0.8 * 0.8 / (2 * variance)));
  CHECK(like.gauss_const == doctest::Approx(0.5 * std::log(kTwoPi)));
  CHECK(like.total ==
        doctest::Approx(0.5 * std::log(kTwoPi * variance) +
                        0.64 / (2 * variance)));
}

TEST_CASE("zero observations leave only the determinant terms") {
  const EffectModelConfig cfg = small_config();
  const Eigen::VectorXd x = random_positions(5, 47);
  const Eigen::VectorXd y = Eigen::VectorXd::Zero(5);
  const EffectLikelihood like = effect_hamiltonian(x, y, cfg);
  CHECK(like.quad == 0.0);
  CHECK(like.total == like.half_logdet + like.gauss_const);
}

TEST_CASE("likelihood matches a dense inverse/determinant oracle") {
  const EffectModelConfig cfg = small_config(32, 0.1);
  const Eigen::VectorXd x = random_positions(3, 53);
  Eigen::VectorXd y(3);
  y << 0.3, -1.1, 0.7;
  const EffectLikelihood like = effect_hamiltonian(x, y, cfg);

  Eigen::MatrixXd m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m(i, j) = covariance_at(cfg.f_spectrum, x[i], x[j], 32);
  m.diagonal().array() += cfg.noise_variance;
  const double oracle = 0.5 * std::log(m.determinant()) +
                        0.5 * y.dot(m.inverse() * y) +
                        1.5 * std::log(kTwoPi);
  CHECK(like.total == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("exp(-total) is a normalized density in y") {
  const EffectModelConfig cfg = small_config(8, 0.25);

  SUBCASE("one point") {
    Eigen::VectorXd x(1);
    x << 0.3;
    const double sigma = std::sqrt(
        covariance_at(cfg.f_spectrum, 0.3, 0.3, 8) + cfg.noise_variance);
    const double lo = -10 * sigma, hi = 10 * sigma;
    const int n = 2000;
    const double h = (hi - lo) / n;
    double integral = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      Eigen::VectorXd y(1);
      y << lo + i * h;
      integral += w * std::exp(-effect_hamiltonian(x, y, cfg).total);
    }
    integral *= h / 3.0;
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
  }

  SUBCASE("two points") {
    Eigen::VectorXd x(2);
    x << 0.3, 0.6;
    const double sigma = std::sqrt(
        covariance_at(cfg.f_spectrum, 0.3, 0.3, 8) + cfg.noise_variance);
    const double lo = -8 * sigma, hi = 8 * sigma;
    const int n = 400;
    const double h = (hi - lo) / n;
    auto weight = [&](int i) {
      if (i == 0 || i == n) return 1.0;
      return i % 2 == 1 ? 4.0 : 2.0;
    };
    double integral = 0.0;
    for (int i = 0; i <= n; ++i) {
      double row = 0.0;
      for (int j = 0; j <= n; ++j) {
        Eigen::VectorXd y(2);
        y << lo + i * h, lo + j * h;
        row += weight(j) * std::exp(-effect_hamiltonian(x, y, cfg).total);
      }
      integral += weight(i) * row;
    }
    integral *= h * h / 9.0;
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("determinant grows and data fit improves with more noise") {
  const Eigen::VectorXd x = random_positions(10, 59);
  Eigen::VectorXd y = random_positions(10, 61);
  const EffectLikelihood lo_noise =
      effect_hamiltonian(x, y, small_config(16, 0.05));
  const EffectLikelihood hi_noise =
      effect_hamiltonian(x, y, small_config(16, 0.5));
  CHECK(hi_noise.half_logdet > lo_noise.half_logdet);
  CHECK(hi_noise.quad <= lo_noise.quad);
}

TEST_CASE("permuting joint points leaves the likelihood unchanged") {
  const EffectModelConfig cfg = small_config(16, 0.1);
  const Eigen::VectorXd x = random_positions(12, 67);
  const Eigen::VectorXd y = random_positions(12, 71);
  const double base = effect_hamiltonian(x, y, cfg).total;

  std::vector<int> index(12);
  std::iota(index.begin(), index.end(), 0);
  std::mt19937_64 engine(73);
  std::shuffle(index.begin(), index.end(), engine);
  Eigen::VectorXd xp(12), yp(12);
  for (int i = 0; i < 12; ++i) {
    xp[i] = x[index[i]];
    yp[i] = y[index[i]];
  }
  CHECK(effect_hamiltonian(xp, yp, cfg).total ==
        doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("duplicated positions are regularized by the noise floor") {
  const EffectModelConfig cfg = small_config(16, 0.01);
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(20, 0.5);
  const Eigen::VectorXd y = random_positions(20, 79);
  const EffectLikelihood like = effect_hamiltonian(x, y, cfg);  // rank-1 + noise
  CHECK(std::isfinite(like.total));
}

TEST_CASE("input validation") {
  const EffectModelConfig cfg = small_config();
  Eigen::VectorXd x(2), y(3);
  x << 0.1, 0.2;
  y << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(effect_hamiltonian(x, y, cfg), Error);

  Eigen::VectorXd y2(2);
  y2 << 1.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(effect_hamiltonian(x, y2, cfg), Error);

  Eigen::VectorXd bad_x(2);
  bad_x << 0.1, 1.4;
  CHECK_THROWS_AS(effect_hamiltonian(bad_x, y2, cfg), Error);

  EffectModelConfig zero_noise = cfg;
  zero_noise.noise_variance = 0.0;
  Eigen::VectorXd ok(2);
  ok << 0.5, 0.6;
  CHECK_THROWS_AS(effect_hamiltonian(x, ok, zero_noise), Error);
}
