#pragma once

#include <stdexcept>
#include <string>

namespace specshift {

/// Invalid argument to a constructor or operation (bad radius, bad interval, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(const std::string& what, int lhs, int rhs)
      : std::invalid_argument(what + ": dimension " + std::to_string(lhs) + " vs " + std::to_string(rhs)),
        lhs_(lhs),
        rhs_(rhs) {}

  int lhs() const { return lhs_; }
  int rhs() const { return rhs_; }

 private:
  int lhs_;
  int rhs_;
};

/// Two paths that are supposed to connect the same operators do not.
class EndpointMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An iterative numerical procedure (eigensolver, adaptive quadrature) did not
/// reach its tolerance. Carries the last two refinement values when meaningful.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous = 0.0, double last = 0.0)
      : std::runtime_error(what), previous_(previous), last_(last) {}

  double previous() const { return previous_; }
  double last() const { return last_; }

 private:
  double previous_;
  double last_;
};

/// The Fourier cutoff of a double operator integral leaves too much tail mass.
class CutoffError : public std::runtime_error {
 public:
  CutoffError(const std::string& what, double cutoff, double tail)
      : std::runtime_error(what), cutoff_(cutoff), tail_(tail) {}

  double cutoff() const { return cutoff_; }
  double tail() const { return tail_; }

 private:
  double cutoff_;
  double tail_;
};

}  // namespace specshift
