#pragma once

#include <algorithm>
#include <cstdint>

#include "specshift/hermitian.hpp"
#include "specshift/models.hpp"
#include "specshift/test_function.hpp"

namespace specshift::support {

struct Hull {
  double lo;
  double hi;
  double mid() const { return 0.5 * (lo + hi); }
  double half() const { return 0.5 * (hi - lo); }
};

/// Smallest interval containing the spectra of both operators.
inline Hull spectral_hull(const HermitianOperator& a, const HermitianOperator& b) {
  const RealVector ea = eigendecompose(a).values;
  const RealVector eb = eigendecompose(b).values;
  return {std::min(ea.minCoeff(), eb.minCoeff()), std::max(ea.maxCoeff(), eb.maxCoeff())};
}

/// H0 random, H1 = H0 + scale * random, both seeded from `seed`.
struct Pair {
  HermitianOperator h0;
  HermitianOperator h1;
};

inline Pair random_pair(int n, std::uint64_t seed, double scale = 0.5) {
  HermitianOperator h0 = random_hermitian(n, seed);
  HermitianOperator h1 = h0 + random_hermitian(n, seed + 1000) * scale;
  return {h0, h1};
}

/// Bump centred on the hull with radius `factor` times its half-width
/// (factor > 1 covers both spectra).
inline TestFunction covering_bump(const Hull& h, double factor = 2.0) {
  return bump(h.mid(), factor * std::max(h.half(), 0.25));
}

inline double relative_frobenius(const Matrix& a, const Matrix& b) { return (a - b).norm() / b.norm(); }

}  // namespace specshift::support
