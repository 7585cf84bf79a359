#include "specshift/ssf.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "path_table.hpp"
#include "specshift/error.hpp"
#include "specshift/quadrature.hpp"

namespace specshift {
namespace {

constexpr double kOracleTol = 1e-13;

double max_step(const std::vector<double>& grid) {
  double h = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) h = std::max(h, grid[i] - grid[i - 1]);
  return h;
}

void require_grid(const std::vector<double>& grid, std::size_t min_points, const char* where) {
  if (grid.size() < min_points) {
    throw ArgumentError(std::string(where) + ": grid needs at least " + std::to_string(min_points) + " points");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ArgumentError(std::string(where) + ": grid must be strictly increasing");
  }
}

// Tr(D phi(H)) from an eigensystem: sum_j phi(lambda_j) <psi_j, D psi_j>.
double weighted_trace(const EigenSystem& es, const Matrix& d, const std::function<double(double)>& phi) {
  double sum = 0.0;
  for (int j = 0; j < es.dim(); ++j) {
    const double p = phi(es.values(j));
    if (p == 0.0) continue;
    sum += p * es.vectors.col(j).dot(d * es.vectors.col(j)).real();
  }
  return sum;
}

double counting_pairing(const RealVector& lambda, const RealVector& mu, const TestFunction& phi) {
  double sum = 0.0;
  for (int j = 0; j < lambda.size(); ++j) sum += integrate_between(phi, lambda(j), mu(j), kOracleTol);
  return sum;
}

void require_linear(const OperatorPath& path, const char* where) {
  if (path.kind() != PathKind::linear) throw ArgumentError(std::string(where) + ": requires a linear path");
}

detail::SpectralPathTable::Options table_options(const SsfOptions& opts) {
  return {opts.r_tol, opts.max_intervals};
}

// -int phi'(lambda) A(lambda) dlambda. A vanishes below the spectra swept by
// the path and is constant above them.
double weak_pairing(const detail::SpectralPathTable& table, const TestFunction& phi, const SsfOptions& opts) {
  if (!phi.compact()) throw UnsupportedError("averaging pairing: requires a compactly supported test function");
  const double spread = std::max(1.0, table.spectral_max() - table.spectral_min());
  const double lo = std::max(phi.support().lo, table.spectral_min() - 1e-3 * spread);
  const double hi = std::min(phi.support().hi, table.spectral_max() + 1e-3 * spread);
  // Support entirely below (A = 0) or above (int phi' * const = 0).
  if (!(hi > lo)) return 0.0;
  std::vector<double> breaks(phi.breakpoints());
  for (int j = 0; j < table.dim(); ++j) {
    breaks.push_back(table.start_values()(j));
    breaks.push_back(table.end_values()(j));
  }
  quad::Options q;
  q.abs_tol = opts.lambda_tol;
  q.max_intervals = opts.max_intervals;
  const auto res = quad::integrate<double>(
      [&](double x) { return phi.derivative(x) * table.cumulative_flow(x); }, lo, hi, q, breaks);
  if (!res.converged) {
    throw ConvergenceError("averaging pairing: lambda quadrature did not converge", res.previous, res.value);
  }
  // Above hi, A is constant and phi' integrates to -phi(hi).
  const double top = table.cumulative_flow(hi);
  return -(res.value - top * phi(hi));
}

}  // namespace

const char* method_name(SsfMethod method) {
  switch (method) {
    case SsfMethod::path_integral:
      return "path_integral";
    case SsfMethod::averaging:
      return "averaging";
    case SsfMethod::counting_oracle:
      return "counting_oracle";
  }
  return "unknown";
}

SsfMethod parse_method(const std::string& name) {
  if (name == "path" || name == "path_integral") return SsfMethod::path_integral;
  if (name == "averaging") return SsfMethod::averaging;
  if (name == "counting" || name == "counting_oracle") return SsfMethod::counting_oracle;
  throw ArgumentError("unknown ssf method '" + name + "'");
}

std::vector<double> uniform_grid(double a, double b, int steps) {
  if (steps < 1 || !(b > a)) throw ArgumentError("uniform_grid: need a < b and steps >= 1");
  std::vector<double> grid(steps + 1);
  for (int i = 0; i <= steps; ++i) grid[i] = a + (b - a) * i / steps;
  grid.back() = b;
  return grid;
}

std::vector<double> parse_grid(const std::string& text) {
  std::stringstream in(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw ArgumentError("grid must look like a:b:steps, got '" + text + "'");
  try {
    std::size_t used = 0;
    const double a = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw ArgumentError("bad grid start");
    const double b = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw ArgumentError("bad grid end");
    const int steps = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw ArgumentError("bad grid steps");
    return uniform_grid(a, b, steps);
  } catch (const std::logic_error&) {
    throw ArgumentError("grid must look like a:b:steps, got '" + text + "'");
  }
}

double grid_pairing(const DensityGrid& grid, const TestFunction& phi, double tol) {
  if (grid.lambda.size() != grid.value.size()) throw ArgumentError("grid_pairing: lambda/value length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < grid.lambda.size(); ++i) {
    if (grid.value[i] == 0.0) continue;
    sum += grid.value[i] * integrate_between(phi, grid.lambda[i], grid.lambda[i + 1], tol);
  }
  return sum;
}

SsfEstimate estimate_from_grid(DensityGrid grid, SsfMethod method) {
  require_grid(grid.lambda, 2, "estimate_from_grid");
  SsfEstimate out;
  out.method = method;
  auto shared = std::make_shared<const DensityGrid>(grid);
  out.pairing = [shared](const TestFunction& phi) { return grid_pairing(*shared, phi); };
  out.density = std::move(grid);
  out.tolerance = 1e-10;
  return out;
}

QuadratureEstimate ssf_path_integral(const OperatorPath& path, const TestFunction& phi, const SsfOptions& opts) {
  auto integrand = [&](double r) {
    const EigenSystem es = eigendecompose(HermitianOperator(path.raw_at(r)));
    return weighted_trace(es, path.raw_derivative(r), [&phi](double x) { return phi(x); });
  };
  quad::Options q;
  q.abs_tol = opts.r_tol;
  q.max_intervals = opts.max_intervals;
  const auto res = quad::integrate<double>(integrand, 0.0, 1.0, q, path.breakpoints());
  if (!res.converged) {
    throw ConvergenceError("ssf_path_integral: r-quadrature did not reach tolerance", res.previous, res.value);
  }
  return {res.value, res.error, static_cast<int>(res.partition.size())};
}

SsfEstimate ssf_path_estimate(const OperatorPath& path, const std::vector<double>& grid, const SsfOptions& opts) {
  SsfEstimate out;
  out.method = SsfMethod::path_integral;
  out.tolerance = opts.r_tol;
  out.pairing = [path, opts](const TestFunction& phi) { return ssf_path_integral(path, phi, opts).value; };
  if (!grid.empty()) {
    require_grid(grid, 2, "ssf_path_estimate");
    const detail::SpectralPathTable table(path, table_options(opts));
    if (!table.converged()) {
      throw ConvergenceError("ssf_path_estimate: path table did not reach tolerance", 0.0, table.error_estimate());
    }
    DensityGrid d{grid, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) d.value[i] = table.flow_density(grid[i]);
    out.density = std::move(d);
    out.grid_tolerance = 2.0 * path.dim() * max_step(grid);
  }
  return out;
}

SsfEstimate ssf_counting_oracle(const HermitianOperator& h0, const HermitianOperator& h1,
                                const std::vector<double>& grid) {
  require_same_dim("ssf_counting_oracle", h0.dim(), h1.dim());
  const EigenSystem e0 = eigendecompose(h0);
  const EigenSystem e1 = eigendecompose(h1);
  SsfEstimate out;
  out.method = SsfMethod::counting_oracle;
  out.tolerance = 2.0 * h0.dim() * kOracleTol;
  out.pairing = [lambda = e0.values, mu = e1.values](const TestFunction& phi) {
    return counting_pairing(lambda, mu, phi);
  };
  if (!grid.empty()) {
    require_grid(grid, 2, "ssf_counting_oracle");
    DensityGrid d{grid, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      d.value[i] = counting_function(e0, grid[i]) - counting_function(e1, grid[i]);
    }
    out.density = std::move(d);
    out.grid_tolerance = 2.0 * h0.dim() * max_step(grid);
  }
  return out;
}

std::vector<double> averaged_flow(const OperatorPath& path, const std::vector<double>& grid, const SsfOptions& opts) {
  require_linear(path, "averaged_flow");
  const detail::SpectralPathTable table(path, table_options(opts));
  if (!table.converged()) {
    throw ConvergenceError("averaged_flow: path table did not reach tolerance", 0.0, table.error_estimate());
  }
  std::vector<double> a(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) a[i] = table.cumulative_flow(grid[i]);
  return a;
}

SsfEstimate ssf_averaging(const OperatorPath& path, const std::vector<double>& grid, const SsfOptions& opts) {
  require_linear(path, "ssf_averaging");
  require_grid(grid, 3, "ssf_averaging");
  auto table = std::make_shared<const detail::SpectralPathTable>(path, table_options(opts));
  if (!table->converged()) {
    throw ConvergenceError("ssf_averaging: path table did not reach tolerance", 0.0, table->error_estimate());
  }
  const std::size_t n = grid.size();
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = table->cumulative_flow(grid[i]);

  DensityGrid d{grid, std::vector<double>(n)};
  d.value[0] = (a[1] - a[0]) / (grid[1] - grid[0]);
  d.value[n - 1] = (a[n - 1] - a[n - 2]) / (grid[n - 1] - grid[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) d.value[i] = (a[i + 1] - a[i - 1]) / (grid[i + 1] - grid[i - 1]);

  SsfEstimate out;
  out.method = SsfMethod::averaging;
  out.density = std::move(d);
  const double h = max_step(grid);
  out.tolerance = 10.0 * (opts.lambda_tol + table->error_estimate());
  out.grid_tolerance = 2.0 * path.dim() * h + 2.0 * (grid.back() - grid.front()) * table->error_estimate() / h;
  out.pairing = [table, opts](const TestFunction& phi) { return weak_pairing(*table, phi, opts); };
  return out;
}

double averaging_weak_check(const OperatorPath& path, const TestFunction& phi, const SsfOptions& opts) {
  require_linear(path, "averaging_weak_check");
  const detail::SpectralPathTable table(path, table_options(opts));
  if (!table.converged()) {
    throw ConvergenceError("averaging_weak_check: path table did not reach tolerance", 0.0, table.error_estimate());
  }
  const double xi = ssf_path_integral(path, phi, opts).value;
  return std::abs(xi - weak_pairing(table, phi, opts));
}

double trace_difference(const HermitianOperator& h0, const HermitianOperator& h1, const TestFunction& f) {
  require_same_dim("trace_difference", h0.dim(), h1.dim());
  auto fx = [&f](double x) { return f(x); };
  const RealVector v0 = eigendecompose(h0).values;
  const RealVector v1 = eigendecompose(h1).values;
  double sum = 0.0;
  for (int j = 0; j < v0.size(); ++j) sum += fx(v1(j)) - fx(v0(j));
  return sum;
}

double krein_check(const HermitianOperator& h0, const HermitianOperator& h1, const TestFunction& f,
                   const SsfEstimate& xi) {
  return std::abs(trace_difference(h0, h1, f) - xi.pair(f.derivative_function()));
}

double theta_potential(const HermitianOperator& h0, const HermitianOperator& v, const TestFunction& f,
                       const SsfOptions& opts) {
  require_same_dim("theta_potential", h0.dim(), v.dim());
  const Matrix a = h0.matrix();
  const Matrix b = v.matrix();
  auto integrand = [&](double r) {
    const EigenSystem es = eigendecompose(HermitianOperator(Matrix(a + r * b)));
    return weighted_trace(es, b, [&f](double x) { return f(x); });
  };
  quad::Options q;
  q.abs_tol = opts.r_tol;
  q.max_intervals = opts.max_intervals;
  const auto res = quad::integrate<double>(integrand, 0.0, 1.0, q);
  if (!res.converged) throw ConvergenceError("theta_potential: r-quadrature did not converge", res.previous, res.value);
  return res.value;
}

double exactness_check(const HermitianOperator& h0, const HermitianOperator& v, const HermitianOperator& x,
                       const TestFunction& f, const SsfOptions& opts) {
  require_same_dim("exactness_check", h0.dim(), v.dim());
  require_same_dim("exactness_check", h0.dim(), x.dim());
  const Matrix a = h0.matrix();
  auto integrand_at = [&](double s) {
    const Matrix dir = v.matrix() + s * x.matrix();
    return [&a, dir, &f](double r) {
      const EigenSystem es = eigendecompose(HermitianOperator(Matrix(a + r * dir)));
      return weighted_trace(es, dir, [&f](double t) { return f(t); });
    };
  };
  // One partition, chosen at s = 0, serves every shifted direction so the
  // quadrature error varies smoothly with s and cancels in the differences.
  quad::Options q;
  q.abs_tol = std::min(opts.r_tol, 1e-12);
  q.max_intervals = opts.max_intervals;
  const auto base = quad::integrate<double>(integrand_at(0.0), 0.0, 1.0, q);
  const std::vector<quad::Interval>& part = base.partition;
  auto theta = [&](double s) { return quad::integrate_on<double>(part, integrand_at(s)); };
  const double slope = richardson_derivative<double>(theta, 1e-3);

  const EigenSystem end = eigendecompose(h0 + v);
  const double expected = weighted_trace(end, x.matrix(), [&f](double t) { return f(t); });
  return std::abs(slope - expected);
}

double path_independence_check(const OperatorPath& first, const OperatorPath& second, const TestFunction& phi,
                               const SsfOptions& opts) {
  require_same_dim("path_independence_check", first.dim(), second.dim());
  const double gap0 = (first.raw_at(0.0) - second.raw_at(0.0)).norm();
  const double gap1 = (first.raw_at(1.0) - second.raw_at(1.0)).norm();
  if (gap0 > 1e-12 || gap1 > 1e-12) {
    throw EndpointMismatch("path_independence_check: paths do not share endpoints (gaps " + std::to_string(gap0) +
                           ", " + std::to_string(gap1) + ")");
  }
  return std::abs(ssf_path_integral(first, phi, opts).value - ssf_path_integral(second, phi, opts).value);
}

double derivative_identity_check(const OperatorPath& path, double r, const TestFunction& f, const TestFunction& phi) {
  if (!(r > 0.0 && r < 1.0)) throw ArgumentError("derivative_identity_check: r must lie in (0, 1)");
  auto fx = [&f](double x) { return f(x); };
  auto f_at = [&](double h) -> Matrix { return apply_function(eigendecompose(HermitianOperator(path.raw_at(r + h))), fx); };
  const Matrix df = richardson_derivative<Matrix>(f_at, 1e-3);

  const EigenSystem es = eigendecompose(HermitianOperator(path.raw_at(r)));
  const Matrix phi_h = apply_function(es, [&phi](double x) { return phi(x); });
  const Matrix dfh = apply_function(es, [&f](double x) { return f.derivative(x); });
  const Complex lhs = trace(df * phi_h);
  const Complex rhs = trace(path.raw_derivative(r) * dfh * phi_h);
  return std::abs(lhs - rhs);
}

double change_of_variable_check(const HermitianOperator& h0, const HermitianOperator& h1, const TestFunction& f,
                                const TestFunction& phi) {
  require_same_dim("change_of_variable_check", h0.dim(), h1.dim());
  const double lhs = ssf_counting_oracle(apply_function(h0, f), apply_function(h1, f)).pair(phi);
  const double rhs = ssf_counting_oracle(h0, h1).pair(pullback(phi, f));
  return std::abs(lhs - rhs);
}

}  // namespace specshift
