#pragma once

#include <functional>
#include <vector>

#include "specshift/hermitian.hpp"

namespace specshift {

enum class PathKind { linear, polynomial, piecewise };

/// Smooth (or piecewise smooth) map r in [0, 1] -> H_r with analytic
/// derivative. Piecewise paths list their junctions in `breakpoints`.
class OperatorPath {
 public:
  using MatrixFn = std::function<Matrix(double)>;

  OperatorPath(int dim, MatrixFn evaluate, MatrixFn derivative, PathKind kind, std::vector<double> breakpoints = {});

  int dim() const { return dim_; }
  PathKind kind() const { return kind_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  HermitianOperator at(double r) const { return HermitianOperator(evaluate_(r)); }
  HermitianOperator derivative(double r) const { return HermitianOperator(derivative_(r)); }
  /// Unsymmetrized values, for inner loops that already trust the path.
  Matrix raw_at(double r) const { return evaluate_(r); }
  Matrix raw_derivative(double r) const { return derivative_(r); }

  HermitianOperator start() const { return at(0.0); }
  HermitianOperator end() const { return at(1.0); }

 private:
  int dim_;
  MatrixFn evaluate_;
  MatrixFn derivative_;
  PathKind kind_;
  std::vector<double> breakpoints_;
};

/// H0 + r V.
OperatorPath linear_path(const HermitianOperator& h0, const HermitianOperator& v);

/// H0 + r V + r (1 - r) W; same endpoints as linear_path(H0, V).
OperatorPath polynomial_path(const HermitianOperator& h0, const HermitianOperator& v, const HermitianOperator& w);

/// Runs `first` on [0, 1/2] and `second` on [1/2, 1]; the end of `first` must
/// match the start of `second` within 1e-12 (Frobenius).
OperatorPath concatenate(const OperatorPath& first, const OperatorPath& second);

}  // namespace specshift
