#include "specshift/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specshift/error.hpp"

namespace specshift {

HermitianOperator::HermitianOperator(const Matrix& entries) {
  if (entries.rows() < 1 || entries.rows() != entries.cols()) {
    throw ArgumentError("HermitianOperator: need a non-empty square matrix, got " +
                        std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()));
  }
  if (!entries.allFinite()) throw ArgumentError("HermitianOperator: non-finite entries");
  const Matrix adjoint = entries.adjoint();
  delta_ = (entries - adjoint).cwiseAbs().maxCoeff();
  if (delta_ > kAsymmetryLimit) {
    throw ArgumentError("HermitianOperator: asymmetry " + std::to_string(delta_) + " exceeds 1e-8");
  }
  entries_ = 0.5 * (entries + adjoint);
}

HermitianOperator HermitianOperator::from_real(const Eigen::MatrixXd& entries) {
  return HermitianOperator(Matrix(entries.cast<Complex>()));
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& values) {
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return from_real(d.asDiagonal().toDenseMatrix());
}

HermitianOperator HermitianOperator::zero(int dim) { return HermitianOperator(Matrix::Zero(dim, dim)); }

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  require_same_dim("HermitianOperator::operator+", dim(), other.dim());
  return HermitianOperator(Matrix(entries_ + other.entries_));
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  require_same_dim("HermitianOperator::operator-", dim(), other.dim());
  return HermitianOperator(Matrix(entries_ - other.entries_));
}

HermitianOperator HermitianOperator::operator*(double scale) const {
  return HermitianOperator(Matrix(scale * entries_));
}

double EigenSystem::spectral_radius() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }

double EigenSystem::cluster_tolerance() const { return 1e-9 * std::max(1.0, spectral_radius()); }

EigenSystem eigendecompose(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    const double norm = h.matrix().norm();
    throw ConvergenceError("eigendecompose: solver failed for dim " + std::to_string(h.dim()) +
                           " (Frobenius norm " + std::to_string(norm) + ")");
  }
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<Cluster> clusters(const EigenSystem& es) {
  std::vector<Cluster> out;
  const double tol = es.cluster_tolerance();
  int begin = 0;
  for (int j = 1; j <= es.dim(); ++j) {
    if (j == es.dim() || es.values[j] - es.values[j - 1] > tol) {
      const double mean = es.values.segment(begin, j - begin).mean();
      out.push_back({begin, j, mean});
      begin = j;
    }
  }
  return out;
}

Matrix apply_function(const EigenSystem& es, const std::function<double(double)>& f) {
  RealVector fv(es.dim());
  for (int j = 0; j < es.dim(); ++j) fv[j] = f(es.values[j]);
  return es.vectors * fv.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

HermitianOperator apply_function(const HermitianOperator& h, const TestFunction& f) {
  return HermitianOperator(apply_function(eigendecompose(h), [&f](double x) { return f(x); }));
}

int counting_function(const EigenSystem& es, double lambda) {
  int count = 0;
  const double tol = es.cluster_tolerance();
  for (const Cluster& c : clusters(es)) {
    if (c.location <= lambda + tol) count += c.multiplicity();
  }
  return count;
}

int counting_function(const HermitianOperator& h, double lambda) {
  return counting_function(eigendecompose(h), lambda);
}

Matrix spectral_projection(const EigenSystem& es, double lambda) {
  const int rank = counting_function(es, lambda);
  const auto v = es.vectors.leftCols(rank);
  return v * v.adjoint();
}

HermitianOperator spectral_projection(const HermitianOperator& h, double lambda) {
  return HermitianOperator(spectral_projection(eigendecompose(h), lambda));
}

Complex trace(const Matrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("trace: matrix is not square");
  return a.trace();
}

double trace_norm(const Matrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("trace_norm: matrix is not square");
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

double operator_norm(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

void require_same_dim(const char* where, int lhs, int rhs) {
  if (lhs != rhs) throw DimensionMismatch(where, lhs, rhs);
}

}  // namespace specshift
