#include "bci/cause_model.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "bci/errors.hpp"

namespace bci {

namespace {

// IEEE double overflows past exp(709); clamp the argument symmetrically and
// report through the flag.
constexpr double kExpClamp = 700.0;

Eigen::VectorXd clamped_exp(const Eigen::VectorXd& beta, bool* clamped) {
  Eigen::VectorXd out(beta.size());
  for (Eigen::Index i = 0; i < beta.size(); ++i) {
    double b = beta[i];
    if (b > kExpClamp || b < -kExpClamp) {
      if (clamped) *clamped = true;
      b = b > 0.0 ? kExpClamp : -kExpClamp;
    }
    out[i] = std::exp(b);
  }
  return out;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace

double cause_half_logdet(const CovarianceMatrix& beta_covariance,
                         const Eigen::VectorXd& beta0, double rho) {
  const Eigen::Index m = beta_covariance.size();
  bool clamped = false;
  const Eigen::VectorXd e_beta = clamped_exp(beta0, &clamped);
  // rho B diag(e^beta0) + I is similar to a positive definite matrix, so
  // its determinant is positive; it is not symmetric, hence LU.
  Eigen::MatrixXd a = rho * beta_covariance.matrix();
  a = a * e_beta.asDiagonal();
  a.diagonal().array() += 1.0;

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  double log_abs = 0.0;
  double sign = lu.permutationP().determinant();
  for (Eigen::Index i = 0; i < m; ++i) {
    const double d = lu.matrixLU()(i, i);
    if (d == 0.0)
      throw FactorizationError("cause_half_logdet: singular matrix");
    if (d < 0.0) sign = -sign;
    log_abs += std::log(std::abs(d));
  }
  if (sign <= 0.0)
    throw FactorizationError("cause_half_logdet: determinant must be positive");
  return 0.5 * log_abs;
}

CauseModel::CauseModel(CovarianceMatrix beta_covariance,
                       CauseModelConfig config)
    : covariance_(std::move(beta_covariance)),
      covariance_inverse_(covariance_.inverse()),
      config_(config) {
  if (!(config_.rho > 0.0)) throw Error("CauseModel: rho must be positive");
  if (config_.newton_tolerance && !(*config_.newton_tolerance > 0.0))
    throw Error("CauseModel: newton_tolerance must be positive");
  if (config_.max_newton_iterations < 1)
    throw Error("CauseModel: max_newton_iterations must be >= 1");
}

double CauseModel::effective_tolerance(const BinCounts& counts) const {
  if (config_.newton_tolerance) return *config_.newton_tolerance;
  return 1e-8 * std::max(1.0, static_cast<double>(counts.total()));
}

double CauseModel::gamma(const Eigen::VectorXd& beta, const BinCounts& counts,
                         bool* clamped) const {
  if (beta.size() != covariance_.size() ||
      counts.counts.size() != covariance_.size())
    throw Error("CauseModel: dimension mismatch");
  const Eigen::VectorXd e_beta = clamped_exp(beta, clamped);
  const double data_term = -counts.counts.cast<double>().dot(beta);
  const double intensity_term = config_.rho * e_beta.sum();
  const double prior_term = 0.5 * beta.dot(covariance_.solve(beta));
  return data_term + intensity_term + prior_term;
}

Eigen::VectorXd CauseModel::gamma_gradient(const Eigen::VectorXd& beta,
                                           const BinCounts& counts,
                                           bool* clamped) const {
  if (beta.size() != covariance_.size() ||
      counts.counts.size() != covariance_.size())
    throw Error("CauseModel: dimension mismatch");
  return config_.rho * clamped_exp(beta, clamped) -
         counts.counts.cast<double>() + covariance_.solve(beta);
}

Eigen::MatrixXd CauseModel::gamma_curvature(const Eigen::VectorXd& beta,
                                            bool* clamped) const {
  if (beta.size() != covariance_.size())
    throw Error("CauseModel: dimension mismatch");
  Eigen::MatrixXd curvature = covariance_inverse_;
  curvature.diagonal() += config_.rho * clamped_exp(beta, clamped);
  return curvature;
}

NewtonResult CauseModel::minimize_beta(const BinCounts& counts) const {
  const Eigen::Index m = covariance_.size();
  if (counts.counts.size() != m) throw Error("CauseModel: dimension mismatch");

  const double tolerance = effective_tolerance(counts);
  constexpr double kArmijo = 1e-4;
  constexpr int kMaxHalvings = 30;

  NewtonResult result;
  result.beta0 = Eigen::VectorXd::Zero(m);
  double value = gamma(result.beta0, counts, &result.exp_clamped);
  result.gamma_trace.push_back(value);
  Eigen::VectorXd gradient =
      gamma_gradient(result.beta0, counts, &result.exp_clamped);

  while (gradient.lpNorm<Eigen::Infinity>() > tolerance &&
         result.iterations < config_.max_newton_iterations) {
    const Eigen::MatrixXd curvature =
        gamma_curvature(result.beta0, &result.exp_clamped);
    const Eigen::LLT<Eigen::MatrixXd> llt(curvature);
    if (llt.info() != Eigen::Success)
      throw FactorizationError("minimize_beta: curvature Cholesky failed");
    const Eigen::VectorXd step = llt.solve(-gradient);
    const double slope = gradient.dot(step);  // < 0 along the Newton step

    double scale = 1.0;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h, scale *= 0.5) {
      const Eigen::VectorXd candidate = result.beta0 + scale * step;
      const double candidate_value =
          gamma(candidate, counts, &result.exp_clamped);
      if (candidate_value <= value + kArmijo * scale * slope) {
        result.beta0 = candidate;
        value = candidate_value;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // step vanished; the gradient check decides below

    result.gamma_trace.push_back(value);
    gradient = gamma_gradient(result.beta0, counts, &result.exp_clamped);
    ++result.iterations;
  }

  result.gradient_norm = gradient.lpNorm<Eigen::Infinity>();
  if (result.gradient_norm > tolerance)
    throw ConvergenceError("minimize_beta: no convergence within " +
                               std::to_string(config_.max_newton_iterations) +
                               " iterations",
                           to_std(result.beta0), result.gradient_norm);
  return result;
}

CausePosterior CauseModel::hamiltonian(const BinCounts& counts) const {
  NewtonResult newton = minimize_beta(counts);

  CausePosterior posterior;
  posterior.beta0 = std::move(newton.beta0);
  posterior.gradient_norm_at_solution = newton.gradient_norm;
  posterior.iterations = newton.iterations;
  posterior.exp_clamped = newton.exp_clamped;

  const Eigen::VectorXd e_beta =
      clamped_exp(posterior.beta0, &posterior.exp_clamped);
  double log_k_factorial = 0.0;
  for (Eigen::Index j = 0; j < counts.counts.size(); ++j)
    log_k_factorial += std::lgamma(counts.counts[j] + 1.0);

  posterior.terms.half_logdet =
      cause_half_logdet(covariance_, posterior.beta0, config_.rho);
  posterior.terms.log_k_factorial = log_k_factorial;
  posterior.terms.minus_k_beta =
      -counts.counts.cast<double>().dot(posterior.beta0);
  posterior.terms.rho_exp = config_.rho * e_beta.sum();
  posterior.terms.prior_quad =
      0.5 * posterior.beta0.dot(covariance_.solve(posterior.beta0));
  posterior.total = posterior.terms.half_logdet +
                    posterior.terms.log_k_factorial +
                    posterior.terms.minus_k_beta + posterior.terms.rho_exp +
                    posterior.terms.prior_quad;
  return posterior;
}

CausePosterior cause_hamiltonian(const Eigen::VectorXd& x,
                                 const GridConfig& grid,
                                 const CauseModel& model) {
  if (grid.n_bins() != model.n_bins())
    throw Error("cause_hamiltonian: grid does not match the model covariance");
  return model.hamiltonian(bin_data(x, grid));
}

}  // namespace bci
