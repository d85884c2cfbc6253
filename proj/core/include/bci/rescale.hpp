#ifndef BCI_RESCALE_HPP
#define BCI_RESCALE_HPP

#include <Eigen/Core>

#include "bci/errors.hpp"

namespace bci {

/// Affine map of a column onto [0,1] such that min maps to exactly 0 and
/// max to exactly 1. Throws DegenerateDataError when the column is constant
/// (fewer than two distinct values).
inline Eigen::VectorXd rescale_column(const Eigen::VectorXd& v) {
  if (v.size() == 0) throw DegenerateDataError("rescale: empty column");
  const double lo = v.minCoeff();
  const double hi = v.maxCoeff();
  if (!(hi > lo))
    throw DegenerateDataError("rescale: degenerate variable (constant column)");
  return (v.array() - lo) / (hi - lo);
}

}  // namespace bci

#endif  // BCI_RESCALE_HPP
