#include "path_table.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "specshift/quadrature.hpp"

namespace specshift::detail {
namespace {

constexpr int kNodes = 16;
constexpr int kSamples = kNodes + 2;
constexpr int kScan = 48;  // interpolant samples per panel when locating crossings

struct Reference {
  std::array<double, kSamples> x;  // -1, Gauss nodes, +1
  std::array<double, kSamples> bary_values;
  std::array<double, kNodes> bary_weights;
};

template <std::size_t N>
std::array<double, N> barycentric(const double* x) {
  std::array<double, N> w{};
  double scale = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    double prod = 1.0;
    for (std::size_t m = 0; m < N; ++m) {
      if (m != k) prod *= x[k] - x[m];
    }
    w[k] = 1.0 / prod;
    scale = std::max(scale, std::abs(w[k]));
  }
  for (double& v : w) v /= scale;
  return w;
}

const Reference& reference() {
  static const Reference ref = [] {
    Reference r{};
    const quad::GaussRule& rule = quad::gl16();
    r.x[0] = -1.0;
    for (int k = 0; k < kNodes; ++k) r.x[k + 1] = rule.nodes[k];
    r.x[kSamples - 1] = 1.0;
    r.bary_values = barycentric<kSamples>(r.x.data());
    r.bary_weights = barycentric<kNodes>(r.x.data() + 1);
    return r;
  }();
  return ref;
}

// Barycentric interpolation at reference coordinate u; optionally returns p'(u).
template <int N>
double interpolate(const double* x, const double* w, const double* f, double u, double* slope = nullptr) {
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k < N; ++k) {
    const double diff = u - x[k];
    if (diff == 0.0) {
      if (slope != nullptr) {
        double s = 0.0;
        for (int m = 0; m < N; ++m) {
          if (m != k) s += (w[m] / w[k]) * (f[m] - f[k]) / (x[k] - x[m]);
        }
        *slope = s;
      }
      return f[k];
    }
    const double a = w[k] / diff;
    num += a * f[k];
    den += a;
  }
  const double p = num / den;
  if (slope != nullptr) {
    double s = 0.0;
    for (int k = 0; k < N; ++k) {
      const double diff = u - x[k];
      s += (w[k] / diff) * (p - f[k]) / diff;
    }
    *slope = s / den;
  }
  return p;
}

}  // namespace

SpectralPathTable::Panel SpectralPathTable::sample(double a, double b) const {
  const Reference& ref = reference();
  Panel p{a, b, Eigen::MatrixXd(dim_, kSamples), Eigen::MatrixXd(dim_, kNodes), {}, {}, {}};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int k = 0; k < kSamples; ++k) {
    const double r = (k == 0) ? a : (k == kSamples - 1) ? b : mid + half * ref.x[k];
    const EigenSystem es = eigendecompose(HermitianOperator(path_.raw_at(r)));
    p.values.col(k) = es.values;
    if (k == 0 || k == kSamples - 1) continue;
    const Matrix dv = path_.raw_derivative(r);
    for (const Cluster& c : clusters(es)) {
      const auto block = es.vectors.middleCols(c.begin, c.multiplicity());
      const double w = (block.adjoint() * dv * block).trace().real() / c.multiplicity();
      for (int j = c.begin; j < c.end; ++j) p.weights(j, k - 1) = w;
    }
  }
  p.value_min = p.values.rowwise().minCoeff();
  p.value_max = p.values.rowwise().maxCoeff();
  p.weight_integral = panel_integrals(p).tail(dim_);
  return p;
}

Eigen::VectorXd SpectralPathTable::panel_integrals(const Panel& p) const {
  const quad::GaussRule& rule = quad::gl16();
  const double half = 0.5 * (p.b - p.a);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * dim_);
  for (int k = 0; k < kNodes; ++k) {
    out.head(dim_) += rule.weights[k] * p.values.col(k + 1);
    out.tail(dim_) += rule.weights[k] * p.weights.col(k);
  }
  return half * out;
}

SpectralPathTable::SpectralPathTable(const OperatorPath& path, const Options& opts)
    : path_(path), dim_(path.dim()) {
  // A candidate is a segment sampled on both halves; its error compares the
  // halves with the 16-point values of the whole segment.
  struct Candidate {
    Panel left;
    Panel right;
    double err;
  };
  auto split = [this](double a, double b, const Eigen::VectorXd& coarse) {
    const double mid = 0.5 * (a + b);
    Candidate c{sample(a, mid), sample(mid, b), 0.0};
    c.err = (panel_integrals(c.left) + panel_integrals(c.right) - coarse).lpNorm<1>();
    return c;
  };
  auto by_error = [](const Candidate& x, const Candidate& y) { return x.err < y.err; };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(by_error)> heap(by_error);

  std::vector<double> cuts{0.0};
  for (double x : path.breakpoints()) {
    if (x > 0.0 && x < 1.0) cuts.push_back(x);
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total_err = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    Candidate c = split(cuts[s], cuts[s + 1], panel_integrals(sample(cuts[s], cuts[s + 1])));
    total_err += c.err;
    heap.push(std::move(c));
  }
  while (total_err > opts.tol && 2 * static_cast<int>(heap.size()) < opts.max_panels) {
    Candidate worst = heap.top();
    heap.pop();
    Candidate lo = split(worst.left.a, worst.left.b, panel_integrals(worst.left));
    Candidate hi = split(worst.right.a, worst.right.b, panel_integrals(worst.right));
    total_err += lo.err + hi.err - worst.err;
    heap.push(std::move(lo));
    heap.push(std::move(hi));
  }

  error_ = 0.0;
  while (!heap.empty()) {
    Candidate c = heap.top();
    heap.pop();
    error_ += c.err;
    panels_.push_back(std::move(c.left));
    panels_.push_back(std::move(c.right));
  }
  std::sort(panels_.begin(), panels_.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  converged_ = error_ <= opts.tol;

  lo_ = panels_.front().value_min.minCoeff();
  hi_ = panels_.front().value_max.maxCoeff();
  for (const Panel& p : panels_) {
    lo_ = std::min(lo_, p.value_min.minCoeff());
    hi_ = std::max(hi_, p.value_max.maxCoeff());
  }
  level_shift_ = 1e-9 * std::max({1.0, std::abs(lo_), std::abs(hi_)});
  start_ = panels_.front().values.col(0);
  end_ = panels_.back().values.col(kSamples - 1);
}

template <class F>
void SpectralPathTable::for_each_crossing(const Panel& p, int j, double level, F&& on_root) const {
  const Reference& ref = reference();
  Eigen::RowVectorXd row = p.values.row(j);
  const double* f = row.data();
  auto value = [&](double u) { return interpolate<kSamples>(ref.x.data(), ref.bary_values.data(), f, u); };
  auto below = [&](double v) { return v <= level; };

  // Scan points: exact samples at the ends, interpolant inside.
  double u_prev = -1.0;
  bool b_prev = below(f[0]);
  for (int s = 1; s <= kScan; ++s) {
    const double u = (s == kScan) ? 1.0 : -1.0 + 2.0 * s / kScan;
    const bool b = below(s == kScan ? f[kSamples - 1] : value(u));
    if (b != b_prev) {
      double lo = u_prev;
      double hi = u;
      for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        const double m = 0.5 * (lo + hi);
        if (below(value(m)) == b_prev) {
          lo = m;
        } else {
          hi = m;
        }
      }
      on_root(0.5 * (lo + hi), b);
    }
    u_prev = u;
    b_prev = b;
  }
}

double SpectralPathTable::cumulative_flow(double lambda) const {
  const Reference& ref = reference();
  const quad::GaussRule& rule = quad::gl16();
  const double level = lambda + level_shift_;
  double total = 0.0;
  for (const Panel& p : panels_) {
    const double half = 0.5 * (p.b - p.a);
    for (int j = 0; j < dim_; ++j) {
      if (p.value_min(j) > level) continue;
      if (p.value_max(j) <= level) {
        total += p.weight_integral(j);
        continue;
      }
      Eigen::RowVectorXd wrow = p.weights.row(j);
      std::vector<double> roots;
      std::vector<bool> entering;
      for_each_crossing(p, j, level, [&](double u, bool enters) {
        roots.push_back(u);
        entering.push_back(enters);
      });
      if (roots.empty()) {
        if (p.values(j, 0) <= level) total += p.weight_integral(j);
        continue;
      }
      // Integrate the weight interpolant over the sub-intervals below the level.
      auto w_at = [&](double u) {
        return interpolate<kNodes>(ref.x.data() + 1, ref.bary_weights.data(), wrow.data(), u);
      };
      auto segment = [&](double u0, double u1) {
        const double m = 0.5 * (u0 + u1);
        const double h = 0.5 * (u1 - u0);
        double s = 0.0;
        for (int k = 0; k < kNodes; ++k) s += rule.weights[k] * w_at(m + h * rule.nodes[k]);
        return h * s;
      };
      double start = -1.0;
      bool inside = p.values(j, 0) <= level;
      double s = 0.0;
      for (std::size_t q = 0; q < roots.size(); ++q) {
        if (inside) s += segment(start, roots[q]);
        start = roots[q];
        inside = entering[q];
      }
      if (inside) s += segment(start, 1.0);
      total += half * s;
    }
  }
  return total;
}

double SpectralPathTable::flow_density(double lambda) const {
  const Reference& ref = reference();
  const double level = lambda + level_shift_;
  double total = 0.0;
  for (const Panel& p : panels_) {
    const double half = 0.5 * (p.b - p.a);
    for (int j = 0; j < dim_; ++j) {
      if (p.value_min(j) > level || p.value_max(j) <= level) continue;
      Eigen::RowVectorXd vrow = p.values.row(j);
      Eigen::RowVectorXd wrow = p.weights.row(j);
      for_each_crossing(p, j, level, [&](double u, bool) {
        double slope = 0.0;
        interpolate<kSamples>(ref.x.data(), ref.bary_values.data(), vrow.data(), u, &slope);
        const double w = interpolate<kNodes>(ref.x.data() + 1, ref.bary_weights.data(), wrow.data(), u);
        const double dr_slope = std::abs(slope) / half;
        if (dr_slope > 0.0) total += w / dr_slope;
      });
    }
  }
  return total;
}

}  // namespace specshift::detail
