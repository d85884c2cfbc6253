#include "bci/field_sampler.hpp"

namespace bci {

Eigen::VectorXd standard_normal(Eigen::Index n, std::mt19937_64& engine) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u[i] = normal(engine);
  return u;
}

Eigen::VectorXd sample_field(const CovarianceMatrix& cov, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  const Eigen::VectorXd u = standard_normal(cov.size(), engine);
  return cov.llt().matrixL() * u;
}

}  // namespace bci
