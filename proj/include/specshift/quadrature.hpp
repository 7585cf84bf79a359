#pragma once

// Gauss-Legendre rules and a globally adaptive composite integrator.
//
// The adaptive scheme keeps a heap of leaf intervals. Each leaf carries the
// 16-point value on the whole interval (coarse) and the sum over its two
// halves (fine); |fine - coarse| is the leaf error. The leaf with the largest
// error is bisected until the summed error drops below tolerance.

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <span>
#include <vector>

namespace specshift::quad {

struct GaussRule {
  std::vector<double> nodes;    // ascending, on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
GaussRule gauss_legendre(int n);

/// Shared 16-point rule used by the adaptive integrator.
const GaussRule& gl16();

/// Rule mapped affinely onto [a, b].
GaussRule map_rule(const GaussRule& rule, double a, double b);

struct Interval {
  double a;
  double b;
};

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_intervals = 1 << 14;
  int initial_intervals = 1;   // uniform pre-split of every breakpoint segment
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  bool converged = false;
  T previous{};                     // total before the last bisection
  std::vector<Interval> partition;  // final leaves, sorted
};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

/// 16-point value of f on [a, b].
template <class T, class F>
T gauss16(F& f, double a, double b) {
  const GaussRule& rule = gl16();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T sum{};
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    sum += rule.weights[k] * f(mid + half * rule.nodes[k]);
  }
  return half * sum;
}

template <class T, class F>
Result<T> integrate(F&& f, double a, double b, const Options& opts = {},
                    std::span<const double> breakpoints = {}) {
  struct Leaf {
    double a, b;
    T left, right;  // 16-point values of the halves
    T fine;
    double err;
  };
  auto make_leaf = [&f](double lo, double hi, const T& coarse) {
    const double mid = 0.5 * (lo + hi);
    Leaf leaf{lo, hi, gauss16<T>(f, lo, mid), gauss16<T>(f, mid, hi), T{}, 0.0};
    leaf.fine = leaf.left + leaf.right;
    leaf.err = magnitude(leaf.fine - coarse);
    return leaf;
  };
  auto by_error = [](const Leaf& x, const Leaf& y) { return x.err < y.err; };
  std::priority_queue<Leaf, std::vector<Leaf>, decltype(by_error)> heap(by_error);

  Result<T> result;
  if (a == b) {
    result.converged = true;
    result.partition.push_back({a, b});
    return result;
  }
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const int pre = std::max(1, opts.initial_intervals);
  T total{};
  double total_err = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double step = (cuts[s + 1] - cuts[s]) / pre;
    for (int k = 0; k < pre; ++k) {
      const double lo = cuts[s] + k * step;
      const double hi = (k + 1 == pre) ? cuts[s + 1] : lo + step;
      Leaf leaf = make_leaf(lo, hi, gauss16<T>(f, lo, hi));
      total += leaf.fine;
      total_err += leaf.err;
      heap.push(std::move(leaf));
    }
  }

  T previous = total;
  auto done = [&] { return total_err <= std::max(opts.abs_tol, opts.rel_tol * magnitude(total)); };
  while (!done() && static_cast<int>(heap.size()) < opts.max_intervals) {
    Leaf worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Leaf lo = make_leaf(worst.a, mid, worst.left);
    Leaf hi = make_leaf(mid, worst.b, worst.right);
    previous = total;
    total += lo.fine + hi.fine - worst.fine;
    total_err += lo.err + hi.err - worst.err;
    heap.push(std::move(lo));
    heap.push(std::move(hi));
  }

  // Final pass: exact re-summation in interval order for reproducibility.
  std::vector<Leaf> leaves;
  leaves.reserve(heap.size());
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(), [](const Leaf& x, const Leaf& y) { return x.a < y.a; });
  T sum{};
  double err = 0.0;
  for (const Leaf& leaf : leaves) {
    sum += leaf.fine;
    err += leaf.err;
    result.partition.push_back({leaf.a, leaf.b});
  }
  result.value = sign * sum;
  result.previous = sign * previous;
  result.error = err;
  result.converged = err <= std::max(opts.abs_tol, opts.rel_tol * magnitude(sum));
  return result;
}

/// Composite rule on a fixed partition: 16 points on each half of every leaf,
/// i.e. the same nodes the adaptive integrator used for its accepted values.
template <class T, class F>
T integrate_on(std::span<const Interval> partition, F&& f) {
  T sum{};
  for (const Interval& iv : partition) {
    const double mid = 0.5 * (iv.a + iv.b);
    sum += gauss16<T>(f, iv.a, mid);
    sum += gauss16<T>(f, mid, iv.b);
  }
  return sum;
}

}  // namespace specshift::quad
