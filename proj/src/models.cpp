#include "specshift/models.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "specshift/error.hpp"

namespace specshift {
namespace {

constexpr double kSeamTol = 1e-12;

// Box-Muller over the raw engine output, so the stream is fixed by the
// engine definition alone.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  // (0, 1]: never 0, so the logarithm stays finite.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

Boundary parse_boundary(const std::string& name) {
  if (name == "dirichlet") return Boundary::dirichlet;
  if (name == "periodic") return Boundary::periodic;
  throw ArgumentError("unknown boundary '" + name + "' (dirichlet|periodic)");
}

const char* boundary_name(Boundary b) { return b == Boundary::dirichlet ? "dirichlet" : "periodic"; }

void LatticeSpec::validate() const {
  if (n < 2) throw ArgumentError("LatticeSpec: n must be at least 2");
  if (!(spacing > 0.0)) throw ArgumentError("LatticeSpec: spacing must be positive");
}

HermitianOperator discrete_laplacian(const LatticeSpec& spec) {
  spec.validate();
  const int n = spec.n;
  const double scale = 1.0 / (spec.spacing * spec.spacing);
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  const int links = spec.boundary == Boundary::periodic ? n : n - 1;
  for (int j = 0; j < n; ++j) l(j, j) = 2.0 * scale;
  for (int j = 0; j < links; ++j) {
    const int k = (j + 1) % n;
    l(j, k) -= scale;
    l(k, j) -= scale;
  }
  return HermitianOperator::from_real(l);
}

HermitianOperator schrodinger(const LatticeSpec& spec, const std::vector<double>& potential) {
  spec.validate();
  if (static_cast<int>(potential.size()) != spec.n) {
    throw DimensionMismatch("schrodinger: potential length", static_cast<int>(potential.size()), spec.n);
  }
  return discrete_laplacian(spec) + HermitianOperator::diagonal(potential);
}

HermitianOperator discrete_dirac(const LatticeSpec& spec) {
  spec.validate();
  if (spec.boundary != Boundary::periodic) {
    throw UnsupportedError("discrete_dirac: only periodic boundary keeps the difference antisymmetric");
  }
  const int n = spec.n;
  const Complex hop(0.0, -1.0 / (2.0 * spec.spacing));  // 1/(2ih)
  Matrix d = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const int k = (j + 1) % n;
    d(j, k) += hop;
    d(k, j) -= hop;
  }
  return HermitianOperator(d);
}

GaugePair gauge_pair(const LatticeSpec& spec, const std::vector<double>& phi) {
  const HermitianOperator d = discrete_dirac(spec);
  const int n = spec.n;
  if (static_cast<int>(phi.size()) != n) {
    throw DimensionMismatch("gauge_pair: phi length", static_cast<int>(phi.size()), n);
  }
  if (std::abs(phi.front()) > kSeamTol || std::abs(phi.back()) > kSeamTol) {
    throw ArgumentError("gauge_pair: phi must vanish at the seam sites (first and last)");
  }
  Eigen::VectorXcd u(n);
  for (int j = 0; j < n; ++j) u(j) = std::polar(1.0, -phi[j]);
  const Matrix da = u.asDiagonal() * d.matrix() * u.conjugate().asDiagonal();

  std::vector<double> a(n);
  for (int j = 0; j < n; ++j) a[j] = (phi[(j + 1) % n] - phi[(j + n - 1) % n]) / (2.0 * spec.spacing);
  return {d, HermitianOperator(da), std::move(a)};
}

HermitianOperator random_hermitian(int n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("random_hermitian: n must be positive");
  NormalStream normal(seed);
  Matrix g(n, n);
  const double half = std::sqrt(0.5);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double re = normal.next();
      const double im = normal.next();
      g(j, k) = Complex(half * re, half * im);
    }
  }
  return HermitianOperator(Matrix(0.5 * (g + g.adjoint())));
}

HermitianOperator random_real_symmetric(int n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("random_real_symmetric: n must be positive");
  NormalStream normal(seed);
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) g(j, k) = normal.next();
  }
  return HermitianOperator::from_real(0.5 * (g + g.transpose()));
}

}  // namespace specshift
