#pragma once

// Spectral shift function engines and the identity checks built on them.
//
// Sign convention everywhere: xi = N_{H0} - N_{H1}, so that
// Tr(f(H1) - f(H0)) = xi(f').

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specshift/hermitian.hpp"
#include "specshift/operator_path.hpp"
#include "specshift/test_function.hpp"

namespace specshift {

enum class SsfMethod { path_integral, averaging, counting_oracle };

const char* method_name(SsfMethod method);
/// "path", "path_integral", "averaging", "counting", "counting_oracle".
SsfMethod parse_method(const std::string& name);

/// Sampled density xi(lambda_i); between samples it is read as a
/// right-continuous step function.
struct DensityGrid {
  std::vector<double> lambda;
  std::vector<double> value;
};

struct SsfEstimate {
  std::function<double(const TestFunction&)> pairing;
  std::optional<DensityGrid> density;
  SsfMethod method = SsfMethod::counting_oracle;
  /// Absolute accuracy of `pairing`.
  double tolerance = 0.0;
  /// L1 accuracy of `density` on its grid: |pairing(phi) - grid_pairing| is
  /// bounded by tolerance + sup|phi| * grid_tolerance.
  double grid_tolerance = 0.0;

  double pair(const TestFunction& phi) const { return pairing(phi); }
};

struct SsfOptions {
  double r_tol = 1e-9;         // quadrature in the path parameter
  int max_intervals = 1 << 14;
  double lambda_tol = 1e-10;   // quadrature in the spectral variable
};

struct QuadratureEstimate {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// a, a + (b-a)/steps, ..., b  (steps + 1 points).
std::vector<double> uniform_grid(double a, double b, int steps);

/// Parses "a:b:steps".
std::vector<double> parse_grid(const std::string& text);

/// int_R phi * density with the density read as a right-continuous step
/// function on the grid (zero outside it).
double grid_pairing(const DensityGrid& grid, const TestFunction& phi, double tol = 1e-12);

/// Estimate backed only by a stored grid (e.g. loaded from CSV).
SsfEstimate estimate_from_grid(DensityGrid grid, SsfMethod method);

/// int_0^1 Tr(H'_r phi(H_r)) dr. Throws ConvergenceError with the last two
/// refinement totals when the tolerance is not reached.
QuadratureEstimate ssf_path_integral(const OperatorPath& path, const TestFunction& phi, const SsfOptions& opts = {});

/// Pairing by ssf_path_integral; with a grid, the density is the crossing
/// density sum w_j / |lambda_j'| of the tabulated path.
SsfEstimate ssf_path_estimate(const OperatorPath& path, const std::vector<double>& grid = {},
                              const SsfOptions& opts = {});

/// xi = N_{H0} - N_{H1}. Pairing: sum_j int_{lambda_j}^{mu_j} phi over the
/// sorted eigenvalues of H0 (lambda) and H1 (mu).
SsfEstimate ssf_counting_oracle(const HermitianOperator& h0, const HermitianOperator& h1,
                                const std::vector<double>& grid = {});

/// A(lambda) = int_0^1 Tr(V E_(-inf, lambda](H0 + rV)) dr on the grid.
std::vector<double> averaged_flow(const OperatorPath& path, const std::vector<double>& grid,
                                  const SsfOptions& opts = {});

/// Density = centered differences of A; pairing uses the weak form
/// -int phi' A. Requires a linear path and at least 3 grid points.
SsfEstimate ssf_averaging(const OperatorPath& path, const std::vector<double>& grid, const SsfOptions& opts = {});

/// |xi_path(phi) + int phi'(lambda) A(lambda) dlambda| for a linear path.
double averaging_weak_check(const OperatorPath& path, const TestFunction& phi, const SsfOptions& opts = {});

/// |Tr(f(H1) - f(H0)) - xi(f')|.
double krein_check(const HermitianOperator& h0, const HermitianOperator& h1, const TestFunction& f,
                   const SsfEstimate& xi);

/// Tr(f(H1) - f(H0)).
double trace_difference(const HermitianOperator& h0, const HermitianOperator& h1, const TestFunction& f);

/// int_0^1 Tr(V f(H0 + rV)) dr.
double theta_potential(const HermitianOperator& h0, const HermitianOperator& v, const TestFunction& f,
                       const SsfOptions& opts = {});

/// |d/ds theta(H0, V + sX)|_{s=0} - Tr(X f(H0 + V))|, the derivative from
/// Richardson-extrapolated central differences (steps 1e-3, 5e-4).
double exactness_check(const HermitianOperator& h0, const HermitianOperator& v, const HermitianOperator& x,
                       const TestFunction& f, const SsfOptions& opts = {});

/// |xi_1(phi) - xi_2(phi)| for two paths with common endpoints (1e-12).
double path_independence_check(const OperatorPath& first, const OperatorPath& second, const TestFunction& phi,
                               const SsfOptions& opts = {});

/// |Tr((d/dr f(H_r)) phi(H_r)) - Tr(H'_r f'(H_r) phi(H_r))| at interior r.
double derivative_identity_check(const OperatorPath& path, double r, const TestFunction& f, const TestFunction& phi);

/// |xi_{f(H0), f(H1)}(phi) - xi_{H0, H1}(phi o f * f')|, both by counting.
double change_of_variable_check(const HermitianOperator& h0, const HermitianOperator& h1, const TestFunction& f,
                                const TestFunction& phi);

/// Richardson-extrapolated central difference (4 D(h/2) - D(h)) / 3.
template <class T, class F>
T richardson_derivative(F&& g, double h) {
  const T coarse = (g(h) - g(-h)) / (2.0 * h);
  const T fine = (g(0.5 * h) - g(-0.5 * h)) / h;
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace specshift
