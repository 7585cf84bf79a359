#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "specshift/test_function.hpp"

namespace specshift {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Dense complex Hermitian matrix. The constructor symmetrizes (A + A*)/2 and
/// rejects inputs whose entrywise asymmetry exceeds 1e-8.
class HermitianOperator {
 public:
  static constexpr double kAsymmetryLimit = 1e-8;

  explicit HermitianOperator(const Matrix& entries);
  static HermitianOperator from_real(const Eigen::MatrixXd& entries);
  static HermitianOperator diagonal(const std::vector<double>& values);
  static HermitianOperator zero(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  /// Largest |A_jk - conj(A_kj)| of the input before symmetrization.
  double symmetrization_delta() const { return delta_; }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double scale) const;

 private:
  Matrix entries_;
  double delta_ = 0.0;
};

inline HermitianOperator operator*(double scale, const HermitianOperator& h) { return h * scale; }

/// Ascending eigenvalues with orthonormal eigenvector columns.
struct EigenSystem {
  RealVector values;
  Matrix vectors;

  int dim() const { return static_cast<int>(values.size()); }
  double spectral_radius() const;
  /// Eigenvalues closer than this are one cluster: 1e-9 * max(1, radius).
  double cluster_tolerance() const;
};

/// Maximal run of eigenvalues with consecutive gaps within cluster tolerance.
struct Cluster {
  int begin;  // first index into EigenSystem::values
  int end;    // one past the last
  double location;  // mean eigenvalue of the run

  int multiplicity() const { return end - begin; }
};

EigenSystem eigendecompose(const HermitianOperator& h);
std::vector<Cluster> clusters(const EigenSystem& es);

/// sum_j f(lambda_j) P_j.
Matrix apply_function(const EigenSystem& es, const std::function<double(double)>& f);
HermitianOperator apply_function(const HermitianOperator& h, const TestFunction& f);

/// E_(-inf, lambda] with ties counted (closed half-line, cluster aware).
HermitianOperator spectral_projection(const HermitianOperator& h, double lambda);
Matrix spectral_projection(const EigenSystem& es, double lambda);

/// N_H(lambda) = #{ j : lambda_j <= lambda }, clusters counted whole.
int counting_function(const HermitianOperator& h, double lambda);
int counting_function(const EigenSystem& es, double lambda);

Complex trace(const Matrix& a);
/// Sum of singular values.
double trace_norm(const Matrix& a);
double operator_norm(const Matrix& a);

/// Throws DimensionMismatch when the operators differ in size.
void require_same_dim(const char* where, int lhs, int rhs);

}  // namespace specshift
