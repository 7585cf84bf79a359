#include "specshift/operator_path.hpp"

#include "specshift/error.hpp"

namespace specshift {

OperatorPath::OperatorPath(int dim, MatrixFn evaluate, MatrixFn derivative, PathKind kind,
                           std::vector<double> breakpoints)
    : dim_(dim),
      evaluate_(std::move(evaluate)),
      derivative_(std::move(derivative)),
      kind_(kind),
      breakpoints_(std::move(breakpoints)) {
  if (dim_ < 1) throw ArgumentError("OperatorPath: dim must be positive");
  if (!evaluate_ || !derivative_) throw ArgumentError("OperatorPath: evaluate and derivative are required");
}

OperatorPath linear_path(const HermitianOperator& h0, const HermitianOperator& v) {
  require_same_dim("linear_path", h0.dim(), v.dim());
  const Matrix a = h0.matrix();
  const Matrix b = v.matrix();
  return OperatorPath(
      h0.dim(), [a, b](double r) -> Matrix { return a + r * b; }, [b](double) -> Matrix { return b; },
      PathKind::linear);
}

OperatorPath polynomial_path(const HermitianOperator& h0, const HermitianOperator& v, const HermitianOperator& w) {
  require_same_dim("polynomial_path", h0.dim(), v.dim());
  require_same_dim("polynomial_path", h0.dim(), w.dim());
  const Matrix a = h0.matrix();
  const Matrix b = v.matrix();
  const Matrix c = w.matrix();
  return OperatorPath(
      h0.dim(), [a, b, c](double r) -> Matrix { return a + r * b + (r * (1.0 - r)) * c; },
      [b, c](double r) -> Matrix { return b + (1.0 - 2.0 * r) * c; }, PathKind::polynomial);
}

OperatorPath concatenate(const OperatorPath& first, const OperatorPath& second) {
  require_same_dim("concatenate", first.dim(), second.dim());
  const double gap = (first.raw_at(1.0) - second.raw_at(0.0)).norm();
  if (gap > 1e-12) throw EndpointMismatch("concatenate: paths do not meet (gap " + std::to_string(gap) + ")");
  std::vector<double> breaks;
  for (double x : first.breakpoints()) breaks.push_back(0.5 * x);
  breaks.push_back(0.5);
  for (double x : second.breakpoints()) breaks.push_back(0.5 + 0.5 * x);
  return OperatorPath(
      first.dim(),
      [first, second](double r) -> Matrix { return r <= 0.5 ? first.raw_at(2.0 * r) : second.raw_at(2.0 * r - 1.0); },
      [first, second](double r) -> Matrix {
        return r <= 0.5 ? Matrix(2.0 * first.raw_derivative(2.0 * r)) : Matrix(2.0 * second.raw_derivative(2.0 * r - 1.0));
      },
      PathKind::piecewise, std::move(breaks));
}

}  // namespace specshift
