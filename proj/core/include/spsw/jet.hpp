#pragma once

// Truncated multivariate Taylor polynomials in three variables.
//
// A Jet of order k holds the normalized Taylor coefficients c_alpha =
// d^alpha f / alpha! for every multi-index |alpha| <= k. Arithmetic truncates
// to the smaller order of its operands, and derivative() lowers the order by one,
// so operator pipelines that differentiate the output of other operators stay
// exact up to the order that is still available.

#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>

namespace spsw {

inline constexpr int kMaxJetOrder = 4;

class Jet {
 public:
  static constexpr int kMaxCoeffs = (kMaxJetOrder + 1) * (kMaxJetOrder + 2) * (kMaxJetOrder + 3) / 6;

  /// Number of coefficients of a jet of the given order.
  static constexpr int coeff_count(int order) { return (order + 1) * (order + 2) * (order + 3) / 6; }

  // Constants carry the maximal order so that they never truncate anything.
  constexpr Jet() : order_(kMaxJetOrder), c_{} {}
  constexpr Jet(double value) : order_(kMaxJetOrder), c_{} { c_[0] = value; }  // NOLINT(google-explicit-constructor)

  static Jet constant(double value, int order);
  /// Identity seed x_axis = x0 + dx_axis of the given order.
  static Jet variable(double x0, int axis, int order);

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int a, int b, int c) const;
  /// Partial derivative d^(a,b,c) f at the expansion point.
  double partial(int a, int b, int c) const;
  double& coeff_ref(int a, int b, int c);

  /// Exact partial derivative along an axis; the result has order() - 1.
  Jet derivative(int axis) const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o) { return *this *= o.reciprocal(); }
  Jet& operator*=(double s);

  Jet operator-() const;
  Jet reciprocal() const;

  // Composition with a univariate function given its derivatives at value().
  Jet compose(const std::array<double, kMaxJetOrder + 1>& derivs) const;

  const double* data() const { return c_.data(); }

 private:
  int order_;
  std::array<double, kMaxCoeffs> c_;
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator+(Jet a, double b) { return a += Jet(b); }
inline Jet operator+(double a, Jet b) { return b += Jet(a); }
inline Jet operator-(Jet a, double b) { return a -= Jet(b); }
inline Jet operator-(double a, const Jet& b) { return Jet(a) - b; }
inline Jet operator*(Jet a, double b) { return a *= b; }
inline Jet operator*(double a, Jet b) { return b *= a; }
inline Jet operator/(Jet a, double b) { return a *= 1.0 / b; }
inline Jet operator/(double a, const Jet& b) { return a * b.reciprocal(); }

Jet sqrt(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet pow(const Jet& x, double p);
Jet atan(const Jet& x);

std::ostream& operator<<(std::ostream& os, const Jet& j);

/// Scalar value of a double or a jet; lets templated evaluators report values.
inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

}  // namespace spsw
