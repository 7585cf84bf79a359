#pragma once

#include <iosfwd>
#include <vector>

#include "specshift/hermitian.hpp"
#include "specshift/test_function.hpp"

namespace specshift {

struct SpectralAtom {
  double location;
  double weight;
};

/// Atomic measure phi -> Tr(V phi(H)) on the spectrum of H: one atom per
/// eigenvalue cluster, weighted by Tr(P V) over the cluster's projection.
struct SpectralMeasureAtoms {
  std::vector<SpectralAtom> atoms;
  int source_dim = 0;

  double pair(const TestFunction& phi) const;
  double total_weight() const;
};

/// Tr(V phi(H)).
double infinitesimal_spectral_flow(const HermitianOperator& h, const HermitianOperator& v, const TestFunction& phi);

SpectralMeasureAtoms spectral_flow_measure(const HermitianOperator& h, const HermitianOperator& v);
SpectralMeasureAtoms spectral_flow_measure(const EigenSystem& es, const Matrix& v);

/// Writes "location,weight" rows (17 significant digits) after a header line.
void write_atoms_csv(std::ostream& out, const SpectralMeasureAtoms& measure);

}  // namespace specshift
