#pragma once

#include <cmath>

namespace specshift {

/// Second-order forward-mode jet: value, first and second derivative with
/// respect to one real variable. Lets a profile be written once as a template
/// and evaluated either on double or on Jet for exact derivatives.
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  constexpr Jet() = default;
  constexpr explicit Jet(double c) : v(c) {}
  constexpr Jet(double value, double first, double second) : v(value), d1(first), d2(second) {}

  static Jet variable(double x) { return {x, 1.0, 0.0}; }
  static Jet constant(double c) { return {c, 0.0, 0.0}; }
};

inline Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
inline Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
inline Jet operator-(Jet a) { return {-a.v, -a.d1, -a.d2}; }
inline Jet operator*(Jet a, Jet b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
inline Jet operator/(Jet a, Jet b) {
  const double q = a.v / b.v;
  const double q1 = (a.d1 - q * b.d1) / b.v;
  const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
  return {q, q1, q2};
}
inline Jet operator+(Jet a, double c) { return {a.v + c, a.d1, a.d2}; }
inline Jet operator+(double c, Jet a) { return a + c; }
inline Jet operator-(Jet a, double c) { return {a.v - c, a.d1, a.d2}; }
inline Jet operator-(double c, Jet a) { return {c - a.v, -a.d1, -a.d2}; }
inline Jet operator*(Jet a, double c) { return {a.v * c, a.d1 * c, a.d2 * c}; }
inline Jet operator*(double c, Jet a) { return a * c; }
inline Jet operator/(Jet a, double c) { return {a.v / c, a.d1 / c, a.d2 / c}; }
inline Jet operator/(double c, Jet a) { return Jet::constant(c) / a; }

inline Jet exp(Jet a) {
  const double e = std::exp(a.v);
  return {e, e * a.d1, e * (a.d2 + a.d1 * a.d1)};
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.v; }

}  // namespace specshift
