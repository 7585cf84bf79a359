#pragma once

// Double operator integrals T^{H1,H0}_{f^[1]}(X) in two representations:
// the spectral (Loewner matrix) form and a Fourier integral over the
// triangle {s0 s1 >= 0, |s1| <= |s0|} for f = g^2.

#include <complex>
#include <vector>

#include "specshift/hermitian.hpp"
#include "specshift/test_function.hpp"

namespace specshift {

constexpr double kDividedDifferenceTol = 1e-7;

/// (f(l) - f(m)) / (l - m), or f'((l + m)/2) once |l - m| <= tau max(1, |l|, |m|).
double divided_difference(const TestFunction& f, double lambda, double mu, double tau = kDividedDifferenceTol);

/// sum_{j,k} f^[1](mu_j, lambda_k) P_j X Q_k with P_j, Q_k the eigenprojections
/// of H1 and H0.
Matrix doi_spectral(const HermitianOperator& h1, const HermitianOperator& h0, const TestFunction& f, const Matrix& x);

/// Quadrature description for the Fourier representation with f = g^2.
///
/// s0 runs over n_s0 Gauss nodes on [0, cutoff] (the s0 < 0 half is the
/// complex conjugate), t = s1/s0 over n_t nodes on [0, 1]. `tail` is
/// max |s g^(s)| / sup|g| over [cutoff, 2 cutoff]; the DOI refuses to run
/// when it exceeds `tail_threshold`.
struct PiMeasure {
  TestFunction g;
  double cutoff = 0.0;
  int n_s0 = 201;
  int n_t = 33;
  double tail = 0.0;
  double tail_threshold = 1e-8;
  /// g is only C^2: g^ decays polynomially and the error estimate is widened.
  bool slow_decay = false;
};

/// Picks the cutoff as the smallest S with tail below threshold (5% scan).
PiMeasure make_pi_measure(const TestFunction& g, int n_s0 = 201, int n_t = 33, double tail_threshold = 1e-8);

/// Uses the given cutoff; throws CutoffError if its tail exceeds the threshold.
PiMeasure make_pi_measure(const TestFunction& g, double cutoff, int n_s0, int n_t, double tail_threshold = 1e-8);

/// Same measure with both node counts doubled.
PiMeasure refined(const PiMeasure& pm);

struct DoiResult {
  Matrix value;
  /// Frobenius distance to the same integral at doubled node counts.
  double error = 0.0;
};

/// int_Pi (e^{i(s0-s1)H1} g(H1) X e^{is1 H0} + e^{i(s0-s1)H1} X g(H0) e^{is1 H0}) dnu_g
/// with dnu_g = sgn(s0) (i / sqrt(2 pi)) g^(s0) ds0 ds1, via s1 = s0 t.
DoiResult doi_pi_integral(const HermitianOperator& h1, const HermitianOperator& h0, const PiMeasure& pm,
                          const Matrix& x, bool estimate_error = true);

/// ||f(H1) - f(H0) - doi_spectral(H1, H0, f, H1 - H0)||_F.
double doi_identity_check(const HermitianOperator& h1, const HermitianOperator& h0, const TestFunction& f);

/// g^2 as a TestFunction (support and smoothness of g).
TestFunction square(const TestFunction& g);

}  // namespace specshift
