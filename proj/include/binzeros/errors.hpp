#pragma once

#include <stdexcept>
#include <string>

namespace binzeros {

/// Argument outside an operation's domain (bad index, bad parameter pair).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters violate the hypothesis a check is stated under.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical method failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A curve sample is too coarse for the requested distance resolution.
class DensityError : public std::invalid_argument {
 public:
  DensityError(const std::string& what, std::size_t required_points)
      : std::invalid_argument(what), required_points_(required_points) {}
  std::size_t required_points() const { return required_points_; }

 private:
  std::size_t required_points_;
};

}  // namespace binzeros
