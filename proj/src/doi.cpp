#include "specshift/doi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specshift/error.hpp"
#include "specshift/quadrature.hpp"

namespace specshift {
namespace {

constexpr double kFourierTol = 1e-13;
constexpr int kTailSamples = 64;

double tail_of(const TestFunction& g, double cutoff, double threshold) {
  const double scale = std::max(sup_norm_estimate(g), 1e-300);
  double worst = 0.0;
  for (int k = 0; k < kTailSamples; ++k) {
    const double s = cutoff * (1.0 + static_cast<double>(k) / (kTailSamples - 1));
    worst = std::max(worst, s * std::abs(fourier_transform(g, s, 1e-3 * threshold * scale)));
  }
  return worst / scale;
}

void require_compact(const TestFunction& g) {
  if (!g.compact()) throw UnsupportedError("doi_pi_integral: g must be compactly supported");
}

// Entrywise kernel in the joint eigenbasis:
// (g(mu_j) + g(lambda_k)) sum w_s w_t s (i/sqrt(2 pi)) g^(s) e^{i s ((1-t) mu_j + t lambda_k)}.
// g is real, so g^(-s) = conj g^(s) and the s < 0 half of the integrand is the
// conjugate of the s > 0 half: the s nodes live on [0, cutoff] and the sum is
// twice the real part.
Matrix pi_kernel(const RealVector& mu, const RealVector& lambda, const PiMeasure& pm) {
  const quad::GaussRule s_rule = quad::map_rule(quad::gauss_legendre(pm.n_s0), 0.0, pm.cutoff);
  const quad::GaussRule t_rule = quad::map_rule(quad::gauss_legendre(pm.n_t), 0.0, 1.0);
  const int ns = pm.n_s0;
  const Complex unit_i(0.0, 1.0);
  const double norm = 2.0 / std::sqrt(2.0 * std::numbers::pi);

  std::vector<Complex> coeff(ns);
  for (int a = 0; a < ns; ++a) {
    const double s = s_rule.nodes[a];
    coeff[a] = s_rule.weights[a] * s * unit_i * norm * fourier_transform(pm.g, s, kFourierTol);
  }

  Matrix k(mu.size(), lambda.size());
  for (int j = 0; j < mu.size(); ++j) {
    for (int l = 0; l < lambda.size(); ++l) {
      double total = 0.0;
      for (std::size_t b = 0; b < t_rule.nodes.size(); ++b) {
        const double x = (1.0 - t_rule.nodes[b]) * mu(j) + t_rule.nodes[b] * lambda(l);
        double inner = 0.0;
        for (int a = 0; a < ns; ++a) inner += (coeff[a] * std::exp(unit_i * (s_rule.nodes[a] * x))).real();
        total += t_rule.weights[b] * inner;
      }
      k(j, l) = (pm.g(mu(j)) + pm.g(lambda(l))) * total;
    }
  }
  return k;
}

}  // namespace

double divided_difference(const TestFunction& f, double lambda, double mu, double tau) {
  const double gap = lambda - mu;
  if (std::abs(gap) <= tau * std::max({1.0, std::abs(lambda), std::abs(mu)})) {
    return f.derivative(0.5 * (lambda + mu));
  }
  return (f(lambda) - f(mu)) / gap;
}

Matrix doi_spectral(const HermitianOperator& h1, const HermitianOperator& h0, const TestFunction& f, const Matrix& x) {
  require_same_dim("doi_spectral", h1.dim(), h0.dim());
  require_same_dim("doi_spectral", h1.dim(), static_cast<int>(x.rows()));
  require_same_dim("doi_spectral", h1.dim(), static_cast<int>(x.cols()));
  const EigenSystem e1 = eigendecompose(h1);
  const EigenSystem e0 = eigendecompose(h0);
  Matrix xt = e1.vectors.adjoint() * x * e0.vectors;
  for (int j = 0; j < e1.dim(); ++j) {
    for (int k = 0; k < e0.dim(); ++k) xt(j, k) *= divided_difference(f, e1.values(j), e0.values(k));
  }
  return e1.vectors * xt * e0.vectors.adjoint();
}

PiMeasure make_pi_measure(const TestFunction& g, int n_s0, int n_t, double tail_threshold) {
  require_compact(g);
  const double cutoff = fourier_cutoff(g, tail_threshold * sup_norm_estimate(g), 1);
  return make_pi_measure(g, cutoff, n_s0, n_t, tail_threshold);
}

PiMeasure make_pi_measure(const TestFunction& g, double cutoff, int n_s0, int n_t, double tail_threshold) {
  require_compact(g);
  if (!(cutoff > 0.0) || n_s0 < 2 || n_t < 1) {
    throw ArgumentError("make_pi_measure: need cutoff > 0, n_s0 >= 2, n_t >= 1");
  }
  PiMeasure pm{g, cutoff, n_s0, n_t, tail_of(g, cutoff, tail_threshold), tail_threshold,
               g.smoothness() != Smoothness::c_infinity_compact};
  if (pm.tail > tail_threshold) {
    throw CutoffError("doi: Fourier cutoff " + std::to_string(cutoff) + " leaves tail " + std::to_string(pm.tail) +
                          " above " + std::to_string(tail_threshold) + "; raise the cutoff",
                      cutoff, pm.tail);
  }
  return pm;
}

PiMeasure refined(const PiMeasure& pm) {
  PiMeasure out = pm;
  out.n_s0 = 2 * pm.n_s0;
  out.n_t = 2 * pm.n_t;
  return out;
}

DoiResult doi_pi_integral(const HermitianOperator& h1, const HermitianOperator& h0, const PiMeasure& pm,
                          const Matrix& x, bool estimate_error) {
  require_same_dim("doi_pi_integral", h1.dim(), h0.dim());
  require_same_dim("doi_pi_integral", h1.dim(), static_cast<int>(x.rows()));
  require_same_dim("doi_pi_integral", h1.dim(), static_cast<int>(x.cols()));
  const EigenSystem e1 = eigendecompose(h1);
  const EigenSystem e0 = eigendecompose(h0);
  const Matrix xt = e1.vectors.adjoint() * x * e0.vectors;

  auto evaluate = [&](const PiMeasure& m) -> Matrix {
    const Matrix k = pi_kernel(e1.values, e0.values, m);
    return e1.vectors * xt.cwiseProduct(k) * e0.vectors.adjoint();
  };
  DoiResult out{evaluate(pm), 0.0};
  if (estimate_error) {
    out.error = (evaluate(refined(pm)) - out.value).norm();
    // Polynomial decay of g^ leaves a truncation error that refinement at a
    // fixed cutoff cannot see.
    if (pm.slow_decay) out.error = std::max(out.error, pm.tail * sup_norm_estimate(pm.g) * x.norm());
  }
  return out;
}

double doi_identity_check(const HermitianOperator& h1, const HermitianOperator& h0, const TestFunction& f) {
  require_same_dim("doi_identity_check", h1.dim(), h0.dim());
  const Matrix lhs = apply_function(h1, f).matrix() - apply_function(h0, f).matrix();
  const Matrix rhs = doi_spectral(h1, h0, f, h1.matrix() - h0.matrix());
  return (lhs - rhs).norm();
}

TestFunction square(const TestFunction& g) { return product(g, g); }

}  // namespace specshift
