#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specshift/hermitian.hpp"

namespace specshift {

enum class Boundary { dirichlet, periodic };

Boundary parse_boundary(const std::string& name);
const char* boundary_name(Boundary b);

struct LatticeSpec {
  int n = 2;
  Boundary boundary = Boundary::dirichlet;
  double spacing = 1.0;

  /// Throws ArgumentError unless n >= 2 and spacing > 0.
  void validate() const;
};

/// -Delta: 2/h^2 on the diagonal, -1/h^2 between neighbours.
HermitianOperator discrete_laplacian(const LatticeSpec& spec);

/// -Delta + diag(potential).
HermitianOperator schrodinger(const LatticeSpec& spec, const std::vector<double>& potential);

/// (1/i) central difference: entry (j, j+1) = 1/(2ih), (j+1, j) = -1/(2ih),
/// wrapped around the circle. Spectrum {sin(2 pi k / n) / h}.
HermitianOperator discrete_dirac(const LatticeSpec& spec);

struct GaugePair {
  HermitianOperator d;
  HermitianOperator d_a;
  /// (phi_{j+1} - phi_{j-1}) / 2h: D_a ~ D + diag(a) for slowly varying phi.
  std::vector<double> a_effective;
};

/// D_a = U D U* with U = diag(e^{-i phi_j}); phi must vanish at both seam
/// sites (the first and last lattice site).
GaugePair gauge_pair(const LatticeSpec& spec, const std::vector<double>& phi);

/// (G + G*)/2, G with independent complex Gaussian entries whose real and
/// imaginary parts are N(0, 1/2). Uniforms come from the top 53 bits of
/// std::mt19937_64(seed); normals from Box-Muller, row-major fill order.
HermitianOperator random_hermitian(int n, std::uint64_t seed);

/// Real symmetric variant with N(0, 1) entries before symmetrization.
HermitianOperator random_real_symmetric(int n, std::uint64_t seed);

}  // namespace specshift
