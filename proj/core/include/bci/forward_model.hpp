#ifndef BCI_FORWARD_MODEL_HPP
#define BCI_FORWARD_MODEL_HPP

#include <cstdint>

#include <Eigen/Core>

#include "bci/direction.hpp"
#include "bci/grid.hpp"
#include "bci/power_spectrum.hpp"

namespace bci {

/// Inputs of the generative model for one synthetic cause-effect pair.
/// The unit spectrum amplitude keeps the sampled log-density moderate on
/// coarse grids; the effect curve is rescaled onto [0,1] anyway, so its
/// amplitude only cancels.
struct ForwardConfig {
  PowerSpectrum beta_spectrum{1.0, 4.0};
  PowerSpectrum f_spectrum{1.0, 4.0};
  double noise_variance = 0.05;  ///< may be zero for noiseless pairs
  int n_bins = 512;
  int target_samples = 300;  ///< expected sample count; the realized N is random
  std::uint64_t seed = 0;
};

/// One labeled two-column dataset. `true_direction` says whether the first
/// column causes the second or vice versa.
struct LabeledPair {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Direction true_direction = Direction::x_to_y;
};

/// Per-bin measurement counts; total() is the number of samples.
struct BinCounts {
  Eigen::VectorXi counts;

  int size() const { return static_cast<int>(counts.size()); }
  int total() const { return counts.sum(); }
};

/// Histograms x (all values in [0,1]) onto the grid. Bin j receives values
/// in [j/m, (j+1)/m); the last bin also takes the right edge 1.
BinCounts bin_data(const Eigen::VectorXd& x, const GridConfig& grid);

/// Per-item seed for reproducible parallel generation: master + index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return master + index;
}

/// Samples one labeled pair from the generative model:
/// draw a Gaussian log-density field beta, Poisson bin counts with means
/// proportional to e^beta summing to target_samples, place the x values at
/// the occupied bin midpoints, draw the effect curve f from its own field
/// prior rescaled onto [0,1], and add white noise. The returned columns are
/// swapped with probability 1/2 and labeled accordingly.
///
/// Deterministic given cfg.seed. A draw with zero total count is retried
/// with an advanced generator state, at most 100 times.
LabeledPair sample_pair(const ForwardConfig& cfg);

}  // namespace bci

#endif  // BCI_FORWARD_MODEL_HPP
