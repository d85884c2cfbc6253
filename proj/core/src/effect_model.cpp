#include "bci/effect_model.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>

#include "bci/covariance.hpp"
#include "bci/errors.hpp"

namespace bci {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_positions(const Eigen::VectorXd& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x[i] >= 0.0 && x[i] <= 1.0))
      throw Error("effect model: positions must lie in [0,1]");
}

}  // namespace

Eigen::MatrixXd gram_matrix(const Eigen::VectorXd& x,
                            const EffectModelConfig& cfg) {
  if (cfg.kernel_modes < 1)
    throw Error("gram_matrix: kernel_modes must be >= 1");
  check_positions(x);

  const Eigen::Index n = x.size();
  const int k_modes = cfg.kernel_modes;
  const int q_max = k_modes / 2;

  // Folding the k-sum onto distinct modes q turns the kernel into a finite
  // non-negative cosine expansion,
  //   F(s,t) = sum_q w_q cos(2 pi q (s-t)),  w_q = mult_q P(q) / K,
  // and cos(2 pi q (s-t)) factorizes through the product formula. Stacking
  // sqrt(w_q) cos(2 pi q x) and sqrt(w_q) sin(2 pi q x) as columns of A
  // gives G = A A^T: exactly symmetric, PSD by construction, and a single
  // rank update instead of N^2 K cosine evaluations.
  Eigen::MatrixXd a(n, 2 * q_max + 1);
  a.col(0).setConstant(std::sqrt(cfg.f_spectrum(0) / k_modes));
  for (int q = 1; q <= q_max; ++q) {
    const double multiplicity = (2 * q == k_modes) ? 1.0 : 2.0;
    const double w = std::sqrt(multiplicity * cfg.f_spectrum(q) / k_modes);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double angle = kTwoPi * q * x[i];
      a(i, 2 * q - 1) = w * std::cos(angle);
      a(i, 2 * q) = w * std::sin(angle);
    }
  }

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(a);
  return gram.selfadjointView<Eigen::Lower>();
}

EffectLikelihood effect_hamiltonian(const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y,
                                    const EffectModelConfig& cfg) {
  if (x.size() != y.size())
    throw Error("effect_hamiltonian: x and y lengths differ");
  if (x.size() < 1) throw Error("effect_hamiltonian: empty data");
  if (!(cfg.noise_variance > 0.0))
    throw Error("effect_hamiltonian: noise_variance must be positive");
  if (!x.allFinite() || !y.allFinite())
    throw Error("effect_hamiltonian: non-finite input");

  const Eigen::Index n = x.size();
  Eigen::MatrixXd m = gram_matrix(x, cfg);
  m.diagonal().array() += cfg.noise_variance;

  const Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw FactorizationError("effect_hamiltonian: Cholesky failed");

  EffectLikelihood like;
  like.half_logdet = llt.matrixLLT().diagonal().array().log().sum();
  const Eigen::VectorXd w = llt.matrixL().solve(y);
  like.quad = 0.5 * w.squaredNorm();
  like.gauss_const = 0.5 * n * std::log(kTwoPi);
  like.total = like.half_logdet + like.quad + like.gauss_const;
  return like;
}

}  // namespace bci
