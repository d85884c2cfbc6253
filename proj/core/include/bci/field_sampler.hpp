#ifndef BCI_FIELD_SAMPLER_HPP
#define BCI_FIELD_SAMPLER_HPP

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "bci/covariance.hpp"

namespace bci {

/// n independent standard-normal draws from the given engine, in index
/// order with a fresh distribution object.
Eigen::VectorXd standard_normal(Eigen::Index n, std::mt19937_64& engine);

/// Draws a zero-mean Gaussian field sample L u on the grid, where L is the
/// Cholesky factor of cov and u is standard normal from a generator seeded
/// with `seed`. Bit-reproducible given the seed.
Eigen::VectorXd sample_field(const CovarianceMatrix& cov, std::uint64_t seed);

}  // namespace bci

#endif  // BCI_FIELD_SAMPLER_HPP
