#ifndef BCI_GRID_HPP
#define BCI_GRID_HPP

#include <Eigen/Core>

#include "bci/errors.hpp"

namespace bci {

/// Equidistant binning of the unit interval [0,1].
///
/// Bin j (0-based) covers [j/m, (j+1)/m), except the last bin which is
/// closed at 1. Midpoints are z_j = (j + 0.5)/m, strictly increasing and
/// contained in (0,1).
class GridConfig {
 public:
  explicit GridConfig(int n_bins) : n_bins_(n_bins) {
    if (n_bins < 2) throw Error("GridConfig: n_bins must be >= 2");
  }

  int n_bins() const { return n_bins_; }

  double midpoint(int j) const { return (j + 0.5) / n_bins_; }

  Eigen::VectorXd midpoints() const {
    Eigen::VectorXd z(n_bins_);
    for (int j = 0; j < n_bins_; ++j) z[j] = midpoint(j);
    return z;
  }

 private:
  int n_bins_;
};

}  // namespace bci

#endif  // BCI_GRID_HPP
