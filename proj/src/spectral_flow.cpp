#include "specshift/spectral_flow.hpp"

#include <cstdio>
#include <ostream>

#include "specshift/error.hpp"

namespace specshift {

double SpectralMeasureAtoms::pair(const TestFunction& phi) const {
  double sum = 0.0;
  for (const SpectralAtom& atom : atoms) sum += atom.weight * phi(atom.location);
  return sum;
}

double SpectralMeasureAtoms::total_weight() const {
  double sum = 0.0;
  for (const SpectralAtom& atom : atoms) sum += atom.weight;
  return sum;
}

double infinitesimal_spectral_flow(const HermitianOperator& h, const HermitianOperator& v, const TestFunction& phi) {
  require_same_dim("infinitesimal_spectral_flow", h.dim(), v.dim());
  const Matrix phi_h = apply_function(eigendecompose(h), [&phi](double x) { return phi(x); });
  // Tr(V phi(H)) as a Frobenius inner product; the imaginary part is roundoff.
  return (v.matrix().transpose().cwiseProduct(phi_h)).sum().real();
}

SpectralMeasureAtoms spectral_flow_measure(const EigenSystem& es, const Matrix& v) {
  SpectralMeasureAtoms out;
  out.source_dim = es.dim();
  for (const Cluster& c : clusters(es)) {
    const auto block = es.vectors.middleCols(c.begin, c.multiplicity());
    const double weight = (block.adjoint() * v * block).trace().real();
    out.atoms.push_back({c.location, weight});
  }
  return out;
}

SpectralMeasureAtoms spectral_flow_measure(const HermitianOperator& h, const HermitianOperator& v) {
  require_same_dim("spectral_flow_measure", h.dim(), v.dim());
  return spectral_flow_measure(eigendecompose(h), v.matrix());
}

void write_atoms_csv(std::ostream& out, const SpectralMeasureAtoms& measure) {
  out << "location,weight\n";
  char line[80];
  for (const SpectralAtom& atom : measure.atoms) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", atom.location, atom.weight);
    out << line;
  }
}

}  // namespace specshift
