#pragma once

// Tabulated spectral data along an operator path.
//
// [0, 1] is split adaptively into panels. On each panel the sorted eigenvalue
// branches lambda_j(r) are sampled at both endpoints and the 16 Gauss nodes,
// and the flow weights w_j(r) = <psi_j, H'_r psi_j> (cluster averaged) at the
// Gauss nodes. Between samples both are represented by their polynomial
// interpolants. Refinement stops once the 16-point integrals of every branch
// agree with the two-half values to the requested tolerance.

#include <Eigen/Dense>
#include <vector>

#include "specshift/operator_path.hpp"

namespace specshift::detail {

class SpectralPathTable {
 public:
  struct Options {
    double tol = 1e-9;
    int max_panels = 1 << 14;
  };

  SpectralPathTable(const OperatorPath& path, const Options& opts);

  /// A(lambda) = int_0^1 Tr(H'_r E_(-inf, lambda](H_r)) dr.
  double cumulative_flow(double lambda) const;

  /// Right-continuous density int_0^1 Tr(H'_r delta(lambda - H_r)) dr, i.e.
  /// the sum over level crossings r* of w_j(r*) / |lambda_j'(r*)|.
  double flow_density(double lambda) const;

  double error_estimate() const { return error_; }
  bool converged() const { return converged_; }
  int panel_count() const { return static_cast<int>(panels_.size()); }
  int dim() const { return dim_; }
  /// Union of the eigenvalues over all samples: [min, max].
  double spectral_min() const { return lo_; }
  double spectral_max() const { return hi_; }
  /// Eigenvalues at r = 0 and r = 1.
  const Eigen::VectorXd& start_values() const { return start_; }
  const Eigen::VectorXd& end_values() const { return end_; }

 private:
  struct Panel {
    double a;
    double b;
    Eigen::MatrixXd values;   // dim x 18: r = a, 16 Gauss nodes, r = b
    Eigen::MatrixXd weights;  // dim x 16: Gauss nodes
    Eigen::VectorXd value_min;
    Eigen::VectorXd value_max;
    Eigen::VectorXd weight_integral;  // int_a^b w_j dr
  };

  Panel sample(double a, double b) const;
  Eigen::VectorXd panel_integrals(const Panel& p) const;  // 2*dim components

  // Visits every level crossing of branch j inside panel p: calls
  // on_root(r, entering) where entering means the branch drops to <= level.
  template <class F>
  void for_each_crossing(const Panel& p, int j, double level, F&& on_root) const;

  OperatorPath path_;
  int dim_;
  std::vector<Panel> panels_;
  double error_ = 0.0;
  bool converged_ = false;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double level_shift_ = 0.0;
  Eigen::VectorXd start_;
  Eigen::VectorXd end_;
};

}  // namespace specshift::detail
