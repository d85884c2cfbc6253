#ifndef BCI_POWER_SPECTRUM_HPP
#define BCI_POWER_SPECTRUM_HPP

#include <cmath>

#include "bci/errors.hpp"

namespace bci {

/// Parametric spectral density P(q) = a / (q^n + 1).
///
/// Strictly positive and non-increasing for q >= 0, so every covariance
/// assembled from it is positive definite.
class PowerSpectrum {
 public:
  PowerSpectrum(double amplitude, double exponent)
      : amplitude_(amplitude), exponent_(exponent) {
    if (!(amplitude > 0.0))
      throw Error("PowerSpectrum: amplitude must be positive");
    if (!(exponent > 0.0))
      throw Error("PowerSpectrum: exponent must be positive");
  }

  double amplitude() const { return amplitude_; }
  double exponent() const { return exponent_; }

  /// Spectral density at mode q >= 0.
  double operator()(double q) const {
    return amplitude_ / (std::pow(q, exponent_) + 1.0);
  }

 private:
  double amplitude_;
  double exponent_;
};

}  // namespace bci

#endif  // BCI_POWER_SPECTRUM_HPP
