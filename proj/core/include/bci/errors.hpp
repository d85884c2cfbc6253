#ifndef BCI_ERRORS_HPP
#define BCI_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bci {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data the model cannot handle, e.g. a constant column.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// A matrix factorization failed beyond the documented recovery policy.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing external files failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Newton minimization exhausted its iteration budget.
///
/// Carries the last iterate and its gradient norm so callers can inspect
/// how far the solver got.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate,
                   double gradient_norm)
      : Error(what),
        last_iterate(std::move(last_iterate)),
        gradient_norm(gradient_norm) {}

  std::vector<double> last_iterate;
  double gradient_norm = 0.0;
};

}  // namespace bci

#endif  // BCI_ERRORS_HPP
