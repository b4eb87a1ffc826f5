#pragma once

#include <stdexcept>
#include <string>

namespace kostlan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An intermediate quantity left the representable range.
class NumericRangeError : public Error {
 public:
  using Error::Error;
};

/// Two points of a configuration coincide (spherical distance below threshold).
class CoincidentPointsError : public Error {
 public:
  CoincidentPointsError(std::size_t i, std::size_t j, double distance)
      : Error("points " + std::to_string(i) + " and " + std::to_string(j) +
              " coincide (distance " + std::to_string(distance) + ")"),
        i_(i),
        j_(j),
        distance_(distance) {}
  std::size_t first() const noexcept { return i_; }
  std::size_t second() const noexcept { return j_; }
  double distance() const noexcept { return distance_; }

 private:
  std::size_t i_;
  std::size_t j_;
  double distance_;
};

/// An iterative method did not converge within its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A Gaussian conditioning block is singular to working precision.
class DegenerateCovarianceError : public Error {
 public:
  using Error::Error;
};

/// Invalid user-supplied arguments or configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace kostlan
