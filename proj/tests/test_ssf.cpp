#include <gtest/gtest.h>

#include <cmath>

#include "specshift/error.hpp"
#include "specshift/spectral_flow.hpp"
#include "specshift/ssf.hpp"
#include "support.hpp"

using namespace specshift;

namespace {

constexpr double kUnitBumpMass = 1.2069003224378762;

HermitianOperator scalar(double x) { return HermitianOperator::diagonal({x}); }

double grid_l1(const DensityGrid& a, const DensityGrid& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < a.lambda.size(); ++i) {
    sum += std::abs(a.value[i] - b.value[i]) * (a.lambda[i + 1] - a.lambda[i]);
  }
  return sum;
}

void expect_path_derivative_consistent(const OperatorPath& path) {
  const double h = 1e-5;
  for (int k = 1; k <= 20; ++k) {
    const double r = k / 21.0;
    const Matrix fd = (path.raw_at(r + h) - path.raw_at(r - h)) / (2.0 * h);
    EXPECT_LE((fd - path.raw_derivative(r)).norm(), 1e-6) << "r = " << r;
    const Matrix m = path.raw_at(r);
    EXPECT_LE((m - m.adjoint()).norm(), 1e-12);
  }
}

}  // namespace

TEST(OperatorPath, LinearEndpointsAndDerivative) {
  const HermitianOperator h0 = random_hermitian(4, 1);
  const HermitianOperator v = random_hermitian(4, 2);
  const OperatorPath path = linear_path(h0, v);
  EXPECT_EQ(path.at(0.0).matrix(), h0.matrix());
  EXPECT_LE((path.at(1.0).matrix() - (h0 + v).matrix()).norm(), 1e-15);
  EXPECT_EQ(path.derivative(0.3).matrix(), v.matrix());
  expect_path_derivative_consistent(path);
  EXPECT_THROW(linear_path(h0, random_hermitian(3, 2)), DimensionMismatch);
}

TEST(OperatorPath, PolynomialEndpointsAndDerivative) {
  const HermitianOperator h0 = random_hermitian(4, 1);
  const HermitianOperator v = random_hermitian(4, 2);
  const HermitianOperator w = random_hermitian(4, 3);
  const OperatorPath path = polynomial_path(h0, v, w);
  EXPECT_LE((path.at(1.0).matrix() - (h0 + v).matrix()).norm(), 1e-14);
  EXPECT_LE((path.derivative(0.5).matrix() - v.matrix()).norm(), 1e-15);
  const OperatorPath flat = polynomial_path(h0, v, HermitianOperator::diagonal({0, 0, 0, 0}));
  const OperatorPath line = linear_path(h0, v);
  for (double r : {0.1, 0.4, 0.9}) EXPECT_LE((flat.raw_at(r) - line.raw_at(r)).norm(), 1e-15);
  expect_path_derivative_consistent(path);
}

TEST(OperatorPath, ConcatenationRequiresMatchingJunction) {
  const HermitianOperator a = random_hermitian(3, 4);
  const HermitianOperator b = random_hermitian(3, 5);
  const HermitianOperator c = random_hermitian(3, 6);
  const OperatorPath joined = concatenate(linear_path(a, b - a), linear_path(b, c - b));
  EXPECT_EQ(joined.kind(), PathKind::piecewise);
  EXPECT_LE((joined.raw_at(0.5) - b.matrix()).norm(), 1e-14);
  EXPECT_LE((joined.raw_at(1.0) - c.matrix()).norm(), 1e-14);
  expect_path_derivative_consistent(joined);
  EXPECT_THROW(concatenate(linear_path(a, b - a), linear_path(c, b - c)), EndpointMismatch);
}

TEST(PathIntegral, ScalarRampMatchesAntiderivative) {
  const OperatorPath path = linear_path(scalar(0.0), scalar(2.0));
  const TestFunction phi = bump(1.0, 1.0);
  const QuadratureEstimate q = ssf_path_integral(path, phi);
  EXPECT_NEAR(q.value, kUnitBumpMass, 1e-9);
  EXPECT_NEAR(q.value, antiderivative(phi, 2.0, 1e-12), 1e-9);
  EXPECT_LE(q.error, 1e-9);
}

TEST(PathIntegral, ZeroPerturbationAndDisjointSupport) {
  const HermitianOperator h0 = random_hermitian(4, 7);
  EXPECT_EQ(ssf_path_integral(linear_path(h0, h0 * 0.0), bump(0.0, 2.0)).value, 0.0);
  const support::Pair p = support::random_pair(4, 7);
  const support::Hull hull = support::spectral_hull(p.h0, p.h1);
  // Along a linear path the spectrum stays inside the numerical range hull.
  const double far = hull.hi + 50.0;
  EXPECT_NEAR(ssf_path_integral(linear_path(p.h0, p.h1 - p.h0), bump(far, 1.0)).value, 0.0, 1e-15);
}

TEST(PathIntegral, BudgetExhaustionThrowsWithRefinementValues) {
  const support::Pair p = support::random_pair(5, 3);
  SsfOptions opts;
  opts.r_tol = 1e-15;
  opts.max_intervals = 2;
  try {
    ssf_path_integral(linear_path(p.h0, p.h1 - p.h0), bump(0.0, 3.0), opts);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_NE(e.previous(), e.last());
  }
}

TEST(CountingOracle, SingleCrossing) {
  const SsfEstimate xi = ssf_counting_oracle(scalar(0.0), scalar(2.0), uniform_grid(-1.0, 3.0, 400));
  ASSERT_TRUE(xi.density.has_value());
  for (std::size_t i = 0; i < xi.density->lambda.size(); ++i) {
    const double l = xi.density->lambda[i];
    const double expected = (l >= 0.0 && l < 2.0) ? 1.0 : 0.0;
    EXPECT_EQ(xi.density->value[i], expected) << l;
  }
  EXPECT_NEAR(xi.pair(bump(1.0, 1.0)), kUnitBumpMass, 1e-10);
}

TEST(CountingOracle, IdenticalEndpointsGiveZero) {
  const HermitianOperator h = random_hermitian(5, 2);
  const SsfEstimate xi = ssf_counting_oracle(h, h, uniform_grid(-4.0, 4.0, 100));
  for (double v : xi.density->value) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(xi.pair(bump(0.0, 3.0)), 0.0);
}

TEST(CountingOracle, SplittingDegenerateLevel) {
  const SsfEstimate xi = ssf_counting_oracle(HermitianOperator::diagonal({0.0, 0.0}),
                                             HermitianOperator::diagonal({-1.0, 1.0}), uniform_grid(-2.0, 2.0, 8));
  const std::vector<double> expected = {0, 0, -1, -1, 1, 1, 0, 0, 0};
  ASSERT_EQ(xi.density->value.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(xi.density->value[i], expected[i]) << i;
}

TEST(CountingOracle, DimensionMismatchThrows) {
  EXPECT_THROW(ssf_counting_oracle(random_hermitian(2, 1), random_hermitian(3, 1)), DimensionMismatch);
}

TEST(Averaging, ScalarRamp) {
  const OperatorPath path = linear_path(scalar(0.0), scalar(2.0));
  const std::vector<double> grid = uniform_grid(-1.0, 3.0, 400);
  const std::vector<double> a = averaged_flow(path, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(a[i], std::min(std::max(grid[i], 0.0), 2.0), 1e-8) << grid[i];
  }
  const SsfEstimate xi = ssf_averaging(path, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] > 0.02 && grid[i] < 1.98) {
      EXPECT_NEAR(xi.density->value[i], 1.0, 1e-8) << grid[i];
    } else if (grid[i] < -0.02 || grid[i] > 2.02) {
      EXPECT_NEAR(xi.density->value[i], 0.0, 1e-8) << grid[i];
    }
  }
  EXPECT_LE(averaging_weak_check(path, bump(1.0, 1.0)), 1e-8);
}

TEST(Averaging, ZeroPerturbation) {
  const HermitianOperator h0 = random_hermitian(4, 9);
  const OperatorPath path = linear_path(h0, h0 * 0.0);
  const std::vector<double> grid = uniform_grid(-4.0, 4.0, 50);
  for (double v : averaged_flow(path, grid)) EXPECT_EQ(v, 0.0);
  const SsfEstimate xi = ssf_averaging(path, grid);
  for (double v : xi.density->value) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(averaging_weak_check(path, bump(0.0, 3.0)), 0.0);
}

TEST(Averaging, GridDensityMatchesOracleInL1) {
  const support::Pair p = support::random_pair(6, 11);
  const support::Hull hull = support::spectral_hull(p.h0, p.h1);
  const double lo = hull.lo - 0.5;
  const double hi = hull.hi + 0.5;
  const std::vector<double> grid = uniform_grid(lo, hi, static_cast<int>(std::ceil((hi - lo) / 1e-3)));
  SsfOptions opts;
  opts.r_tol = 1e-8;
  const SsfEstimate avg = ssf_averaging(linear_path(p.h0, p.h1 - p.h0), grid, opts);
  const SsfEstimate oracle = ssf_counting_oracle(p.h0, p.h1, grid);
  EXPECT_LE(grid_l1(*avg.density, *oracle.density), 0.05);
}

TEST(Averaging, WeakFormOnRandomPair) {
  const support::Pair p = support::random_pair(5, 3);
  const support::Hull hull = support::spectral_hull(p.h0, p.h1);
  EXPECT_LE(averaging_weak_check(linear_path(p.h0, p.h1 - p.h0), support::covering_bump(hull, 0.8)), 1e-6);
}

TEST(Averaging, RejectsNonLinearPathsAndShortGrids) {
  const HermitianOperator h0 = random_hermitian(3, 1);
  const HermitianOperator v = random_hermitian(3, 2);
  const OperatorPath curved = polynomial_path(h0, v, random_hermitian(3, 3));
  EXPECT_THROW(ssf_averaging(curved, uniform_grid(-1.0, 1.0, 10)), ArgumentError);
  EXPECT_THROW(ssf_averaging(linear_path(h0, v), {0.0, 1.0}), ArgumentError);
  EXPECT_THROW(averaging_weak_check(curved, bump(0.0, 1.0)), ArgumentError);
}

TEST(Krein, ScalarCap) {
  const SsfEstimate xi = ssf_counting_oracle(scalar(0.0), scalar(2.0));
  EXPECT_LE(krein_check(scalar(0.0), scalar(2.0), cap(-1.0, 3.0, 0.1), xi), 1e-9);
  // Spectra at different heights of the ramps make both sides nonzero.
  const TestFunction ramped = cap(-0.7, 2.5, 0.1);
  EXPECT_GT(std::abs(trace_difference(scalar(0.0), scalar(2.0), ramped)), 0.1);
  EXPECT_LE(krein_check(scalar(0.0), scalar(2.0), ramped, xi), 1e-9);
  EXPECT_LE(krein_check(scalar(0.0), scalar(2.0), bump(1.5, 1.0), xi), 1e-9);
}

TEST(Krein, IdenticalEndpoints) {
  const HermitianOperator h = random_hermitian(4, 6);
  EXPECT_EQ(krein_check(h, h, bump(0.0, 2.0), ssf_counting_oracle(h, h)), 0.0);
}

TEST(Krein, PathEstimateOnRandomPair) {
  const support::Pair p = support::random_pair(8, 5);
  const support::Hull hull = support::spectral_hull(p.h0, p.h1);
  const SsfEstimate xi = ssf_path_estimate(linear_path(p.h0, p.h1 - p.h0));
  const TestFunction f = bump(hull.lo + 0.3 * (hull.hi - hull.lo), 0.8 * (hull.hi - hull.lo));
  EXPECT_GT(std::abs(trace_difference(p.h0, p.h1, f)), 1e-3);
  EXPECT_LE(krein_check(p.h0, p.h1, f, xi), 1e-6);
}

TEST(Krein, NegatedDensityBreaksIdentity) {
  const SsfEstimate xi = ssf_counting_oracle(scalar(0.0), scalar(2.0), uniform_grid(-1.0, 3.0, 4000));
  DensityGrid flipped = *xi.density;
  for (double& v : flipped.value) v = -v;
  const TestFunction f = bump(1.5, 1.0);
  EXPECT_LE(krein_check(scalar(0.0), scalar(2.0), f, estimate_from_grid(*xi.density, SsfMethod::counting_oracle)),
            1e-2);
  EXPECT_GT(krein_check(scalar(0.0), scalar(2.0), f, estimate_from_grid(flipped, SsfMethod::counting_oracle)), 0.5);
}

TEST(ThreeWay, RandomPairsAgree) {
  for (int n : {2, 3, 5, 8}) {
    for (std::uint64_t seed : {1u, 2u}) {
      const support::Pair p = support::random_pair(n, 100 * n + seed);
      const support::Hull hull = support::spectral_hull(p.h0, p.h1);
      const OperatorPath path = linear_path(p.h0, p.h1 - p.h0);
      const SsfEstimate oracle = ssf_counting_oracle(p.h0, p.h1);
      const SsfEstimate via_path = ssf_path_estimate(path);
      for (double factor : {0.5, 1.0, 2.0}) {
        const TestFunction phi = support::covering_bump(hull, factor);
        EXPECT_LE(std::abs(via_path.pair(phi) - oracle.pair(phi)), 1e-6) << n << "/" << seed << "/" << factor;
        EXPECT_LE(averaging_weak_check(path, phi), 1e-6) << n << "/" << seed << "/" << factor;
      }
    }
  }
}

TEST(Invariants, AdditivityAlongConcatenatedPaths) {
  const HermitianOperator h0 = random_hermitian(5, 41);
  const HermitianOperator h1 = h0 + random_hermitian(5, 42) * 0.4;
  const HermitianOperator h2 = h1 + random_hermitian(5, 43) * 0.4;
  const support::Hull hull = support::spectral_hull(h0, h2);
  const TestFunction phi = bump(hull.mid() + 0.3, 1.5);
  const OperatorPath whole = concatenate(linear_path(h0, h1 - h0), linear_path(h1, h2 - h1));
  const double joined = ssf_path_integral(whole, phi).value;
  const double first = ssf_path_integral(linear_path(h0, h1 - h0), phi).value;
  const double second = ssf_path_integral(linear_path(h1, h2 - h1), phi).value;
  EXPECT_NEAR(joined, first + second, 1e-6);
  EXPECT_NEAR(ssf_counting_oracle(h0, h2).pair(phi),
              ssf_counting_oracle(h0, h1).pair(phi) + ssf_counting_oracle(h1, h2).pair(phi), 1e-9);
}

TEST(Invariants, PositivePerturbationGivesNonNegativeDensity) {
  for (std::uint64_t seed = 50; seed < 55; ++seed) {
    const HermitianOperator h0 = random_hermitian(6, seed);
    const Matrix g = random_hermitian(6, seed + 7).matrix();
    const HermitianOperator v(g * g.adjoint() * 0.1);
    const support::Hull hull = support::spectral_hull(h0, h0 + v);
    const std::vector<double> grid = uniform_grid(hull.lo - 0.5, hull.hi + 0.5, 500);
    const SsfEstimate oracle = ssf_counting_oracle(h0, h0 + v, grid);
    const SsfEstimate path = ssf_path_estimate(linear_path(h0, v), grid);
    for (double x : oracle.density->value) EXPECT_GE(x, 0.0);
    for (double x : path.density->value) EXPECT_GE(x, -1e-9);
  }
}

TEST(Invariants, TotalMassIsTraceOfPerturbation) {
  for (std::uint64_t seed = 60; seed < 65; ++seed) {
    const support::Pair p = support::random_pair(6, seed);
    const support::Hull hull = support::spectral_hull(p.h0, p.h1);
    const double tr_v = trace((p.h1 - p.h0).matrix()).real();
    // plateau is 1 on the hull, so pairing with it integrates the density.
    const TestFunction one = plateau(hull.lo, hull.hi);
    EXPECT_NEAR(ssf_counting_oracle(p.h0, p.h1).pair(one), tr_v, 1e-9);
    EXPECT_NEAR(ssf_path_integral(linear_path(p.h0, p.h1 - p.h0), one).value, tr_v, 1e-8);
    EXPECT_NEAR(trace_difference(p.h0, p.h1, polynomial({0.0, 1.0})), tr_v, 1e-12);
  }
}

TEST(Invariants, PairingBoundedByDensityMass) {
  const support::Pair p = support::random_pair(7, 71);
  const support::Hull hull = support::spectral_hull(p.h0, p.h1);
  const std::vector<double> grid = uniform_grid(hull.lo - 0.5, hull.hi + 0.5, 2000);
  const SsfEstimate oracle = ssf_counting_oracle(p.h0, p.h1, grid);
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) mass += std::abs(oracle.density->value[i]) * (grid[i + 1] - grid[i]);
  EXPECT_LE(mass, trace_norm((p.h1 - p.h0).matrix()) + 1e-9);
  for (double factor : {0.3, 0.7, 1.5}) {
    const TestFunction phi = support::covering_bump(hull, factor);
    EXPECT_LE(std::abs(oracle.pair(phi)), sup_norm_estimate(phi) * mass * (1.0 + 1e-9) + 1e-9);
  }
}

TEST(Invariants, GridPairingWithinReportedTolerance) {
  const support::Pair p = support::random_pair(5, 81);
  const support::Hull hull = support::spectral_hull(p.h0, p.h1);
  const std::vector<double> grid = uniform_grid(hull.lo - 0.5, hull.hi + 0.5, 3000);
  const OperatorPath path = linear_path(p.h0, p.h1 - p.h0);
  const TestFunction phi = support::covering_bump(hull, 0.9);
  const double sup = sup_norm_estimate(phi);
  for (const SsfEstimate& xi : {ssf_counting_oracle(p.h0, p.h1, grid), ssf_path_estimate(path, grid),
                                ssf_averaging(path, grid)}) {
    ASSERT_TRUE(xi.density.has_value());
    EXPECT_LE(std::abs(xi.pair(phi) - grid_pairing(*xi.density, phi)), xi.tolerance + sup * xi.grid_tolerance)
        << method_name(xi.method);
  }
}

TEST(Invariants, PathDensityIsIntegerStepFunction) {
  const support::Pair p = support::random_pair(6, 91);
  const support::Hull hull = support::spectral_hull(p.h0, p.h1);
  const std::vector<double> grid = uniform_grid(hull.lo - 0.5, hull.hi + 0.5, 2000);
  const SsfEstimate path = ssf_path_estimate(linear_path(p.h0, p.h1 - p.h0), grid);
  const SsfEstimate oracle = ssf_counting_oracle(p.h0, p.h1, grid);
  EXPECT_LE(grid_l1(*path.density, *oracle.density), 1e-6);
}

TEST(Invariants, DerivativeInPathParameterIsSpectralFlow) {
  // d/dr xi_{H0, H_r}(phi) = Tr(V phi(H_r)).
  const support::Pair p = support::random_pair(5, 15);
  const HermitianOperator v = p.h1 - p.h0;
  const TestFunction phi = bump(0.2, 2.5);
  for (int k = 1; k <= 20; ++k) {
    const double r = k / 21.0;
    const double d = richardson_derivative<double>(
        [&](double s) { return ssf_counting_oracle(p.h0, p.h0 + v * (r + s)).pair(phi); }, 1e-3);
    EXPECT_NEAR(d, infinitesimal_spectral_flow(p.h0 + v * r, v, phi), 1e-6) << "r = " << r;
  }
}

TEST(Theta, Examples) {
  const HermitianOperator h = random_hermitian(3, 2);
  EXPECT_EQ(theta_potential(h, h * 0.0, bump(0.0, 2.0)), 0.0);
  const TestFunction f = bump(0.5, 0.5);
  EXPECT_NEAR(theta_potential(scalar(0.0), scalar(1.0), f), antiderivative(f, 1.0, 1e-12), 1e-9);
}

TEST(Exactness, Examples) {
  const HermitianOperator h0 = random_hermitian(4, 9);
  const HermitianOperator v = random_hermitian(4, 10);
  const TestFunction f = bump(0.0, 3.0);
  EXPECT_LE(exactness_check(h0, v, h0 * 0.0, f), 1e-12);
  EXPECT_LE(exactness_check(scalar(0.2), scalar(0.5), scalar(-0.7), bump(0.3, 1.0)), 1e-8);
  EXPECT_LE(exactness_check(h0, v, random_hermitian(4, 11), f), 1e-5);
}

TEST(PathIndependence, Examples) {
  const support::Pair p = support::random_pair(6, 13);
  const HermitianOperator v = p.h1 - p.h0;
  const support::Hull hull = support::spectral_hull(p.h0, p.h1);
  const TestFunction phi = support::covering_bump(hull, 0.9);
  const OperatorPath line = linear_path(p.h0, v);
  EXPECT_EQ(path_independence_check(line, line, phi), 0.0);
  const OperatorPath curved = polynomial_path(p.h0, v, random_hermitian(6, 14) * 0.5);
  EXPECT_LE(path_independence_check(line, curved, phi), 1e-6);
  const double oracle = ssf_counting_oracle(p.h0, p.h1).pair(phi);
  EXPECT_NEAR(ssf_path_integral(line, phi).value, oracle, 1e-6);
  EXPECT_NEAR(ssf_path_integral(curved, phi).value, oracle, 1e-6);
  EXPECT_THROW(path_independence_check(line, linear_path(p.h0, v * 1.1), phi), EndpointMismatch);
}

TEST(DerivativeIdentity, Examples) {
  const HermitianOperator h = random_hermitian(3, 1);
  const OperatorPath constant = linear_path(h, h * 0.0);
  EXPECT_LE(derivative_identity_check(constant, 0.5, bump(0.0, 2.0), bump(0.5, 2.0)), 1e-14);
  EXPECT_LE(derivative_identity_check(linear_path(scalar(0.0), scalar(1.0)), 0.4, bump(0.2, 1.0), bump(0.6, 1.0)),
            1e-8);
  const support::Pair p = support::random_pair(5, 21);
  EXPECT_LE(derivative_identity_check(linear_path(p.h0, p.h1 - p.h0), 0.4, bump(0.0, 3.0), cap(-2.0, 2.5, 0.2)),
            1e-5);
  EXPECT_THROW(derivative_identity_check(constant, 0.0, bump(0.0, 1.0), bump(0.0, 1.0)), ArgumentError);
  EXPECT_THROW(derivative_identity_check(constant, 1.0, bump(0.0, 1.0), bump(0.0, 1.0)), ArgumentError);
}

TEST(ChangeOfVariable, Examples) {
  const TestFunction square_fn = polynomial({0.0, 0.0, 1.0});
  const TestFunction phi = bump(2.5, 1.0);
  // Both sides equal int_1^4 phi.
  const double both = integrate_between(phi, 1.0, 4.0, 1e-12);
  EXPECT_NEAR(ssf_counting_oracle(scalar(1.0), scalar(2.0)).pair(pullback(phi, square_fn)), both, 1e-9);
  EXPECT_LE(change_of_variable_check(scalar(1.0), scalar(2.0), square_fn, phi), 1e-9);
  EXPECT_LE(change_of_variable_check(scalar(1.0), scalar(2.0), square_fn, bump(20.0, 1.0)), 1e-15);
  const support::Pair p = support::random_pair(4, 17);
  const support::Hull hull = support::spectral_hull(p.h0, p.h1);
  // Plateau in the middle of the spectral hull, so f is not monotone there.
  const TestFunction f = cap(hull.lo - 0.8, hull.hi + 0.8, 0.2);
  EXPECT_LE(change_of_variable_check(p.h0, p.h1, f, bump(0.6, 0.5)), 1e-6);
}

TEST(Grid, UniformAndParsed) {
  const std::vector<double> g = uniform_grid(-1.0, 3.0, 400);
  ASSERT_EQ(g.size(), 401u);
  EXPECT_EQ(g.front(), -1.0);
  EXPECT_EQ(g.back(), 3.0);
  EXPECT_EQ(parse_grid("-1:3:400"), g);
  for (const char* bad : {"1:2", "a:1:3", "0:1:0", "2:1:5", "0:1:2:3", "0:1:x"}) {
    EXPECT_THROW(parse_grid(bad), ArgumentError) << bad;
  }
}

TEST(Grid, StepPairingOfIndicator) {
  DensityGrid d{{0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 0.0, 0.0}};
  const TestFunction phi = bump(1.5, 1.0);
  EXPECT_NEAR(grid_pairing(d, phi), integrate_between(phi, 1.0, 2.0, 1e-13), 1e-12);
}

TEST(Method, NamesRoundTrip) {
  for (SsfMethod m : {SsfMethod::path_integral, SsfMethod::averaging, SsfMethod::counting_oracle}) {
    EXPECT_EQ(parse_method(method_name(m)), m);
  }
  EXPECT_EQ(parse_method("path"), SsfMethod::path_integral);
  EXPECT_EQ(parse_method("counting"), SsfMethod::counting_oracle);
  EXPECT_THROW(parse_method("magic"), ArgumentError);
}
