#pragma once

// Small fixed-size tensors over a generic scalar (double or Jet).
//
// Conventions used throughout the library: orthonormal-frame components,
// orientation eps_123 = +1. A Mat3 m stands for sum_ij m(i,j) e^i (x) e^j; for
// T*M-valued forms the first index is the form slot (after *3), the second
// the value slot.

#include <algorithm>
#include <array>
#include <cmath>
#include <type_traits>

#include "spsw/jet.hpp"

namespace spsw {

/// Levi-Civita symbol with eps(0,1,2) = +1.
constexpr int eps(int i, int j, int k) {
  return (i - j) * (j - k) * (k - i) / 2;
}

template <class T>
struct Vec3 {
  std::array<T, 3> v{};

  T& operator[](int i) { return v[i]; }
  const T& operator[](int i) const { return v[i]; }

  static Vec3 unit(int i) {
    Vec3 r;
    r[i] = T(1.0);
    return r;
  }

  Vec3& operator+=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) v[i] += o.v[i];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) v[i] -= o.v[i];
    return *this;
  }
  template <class S>
  Vec3& operator*=(const S& s) {
    for (int i = 0; i < 3; ++i) v[i] *= s;
    return *this;
  }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator-(Vec3 a) {
    for (int i = 0; i < 3; ++i) a.v[i] = -a.v[i];
    return a;
  }
  friend Vec3 operator*(Vec3 a, const T& s) { return a *= s; }
  friend Vec3 operator*(const T& s, Vec3 a) { return a *= s; }
  friend Vec3 operator*(Vec3 a, double s) requires(!std::is_same_v<T, double>) { return a *= s; }
  friend Vec3 operator*(double s, Vec3 a) requires(!std::is_same_v<T, double>) { return a *= s; }
};

template <class T>
struct Mat3 {
  std::array<std::array<T, 3>, 3> m{};

  T& operator()(int i, int j) { return m[i][j]; }
  const T& operator()(int i, int j) const { return m[i][j]; }

  static Mat3 identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r(i, i) = T(1.0);
    return r;
  }

  Vec3<T> row(int i) const { return Vec3<T>{m[i]}; }
  void set_row(int i, const Vec3<T>& r) { m[i] = r.v; }

  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = m[j][i];
    return r;
  }

  Mat3& operator+=(const Mat3& o) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] += o.m[i][j];
    return *this;
  }
  Mat3& operator-=(const Mat3& o) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] -= o.m[i][j];
    return *this;
  }
  template <class S>
  Mat3& operator*=(const S& s) {
    for (auto& r : m)
      for (auto& x : r) x *= s;
    return *this;
  }
  friend Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
  friend Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
  friend Mat3 operator-(Mat3 a) { return a *= -1.0; }
  friend Mat3 operator*(Mat3 a, const T& s) { return a *= s; }
  friend Mat3 operator*(const T& s, Mat3 a) { return a *= s; }
  friend Mat3 operator*(Mat3 a, double s) requires(!std::is_same_v<T, double>) { return a *= s; }
  friend Mat3 operator*(double s, Mat3 a) requires(!std::is_same_v<T, double>) { return a *= s; }
};

template <class T>
struct Spinor {
  T f{};
  Vec3<T> sigma{};

  Spinor& operator+=(const Spinor& o) {
    f += o.f;
    sigma += o.sigma;
    return *this;
  }
  Spinor& operator-=(const Spinor& o) {
    f -= o.f;
    sigma -= o.sigma;
    return *this;
  }
  template <class S>
  Spinor& operator*=(const S& s) {
    f *= s;
    sigma *= s;
    return *this;
  }
  friend Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
  friend Spinor operator-(Spinor a, const Spinor& b) { return a -= b; }
  friend Spinor operator-(Spinor a) { return a *= -1.0; }
  friend Spinor operator*(Spinor a, const T& s) { return a *= s; }
  friend Spinor operator*(const T& s, Spinor a) { return a *= s; }
  friend Spinor operator*(Spinor a, double s) requires(!std::is_same_v<T, double>) { return a *= s; }
  friend Spinor operator*(double s, Spinor a) requires(!std::is_same_v<T, double>) { return a *= s; }
};

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;
using Spinord = Spinor<double>;
using Vec3J = Vec3<Jet>;
using Mat3J = Mat3<Jet>;
using SpinorJ = Spinor<Jet>;

// ---- vector algebra -------------------------------------------------------

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

template <class T>
Mat3<T> outer(const Vec3<T>& a, const Vec3<T>& b) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
  return r;
}

template <class T>
Vec3<T> matvec(const Mat3<T>& m, const Vec3<T>& x) {
  Vec3<T> r;
  for (int i = 0; i < 3; ++i) r[i] = m(i, 0) * x[0] + m(i, 1) * x[1] + m(i, 2) * x[2];
  return r;
}

/// x^T m, i.e. contraction on the first index.
template <class T>
Vec3<T> vecmat(const Vec3<T>& x, const Mat3<T>& m) {
  Vec3<T> r;
  for (int j = 0; j < 3; ++j) r[j] = x[0] * m(0, j) + x[1] * m(1, j) + x[2] * m(2, j);
  return r;
}

template <class T>
Mat3<T> matmul(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return r;
}

template <class T>
T frob_inner(const Mat3<T>& a, const Mat3<T>& b) {
  T s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a(i, j) * b(i, j);
  return s;
}

template <class T>
T inner(const Spinor<T>& a, const Spinor<T>& b) {
  return a.f * b.f + dot(a.sigma, b.sigma);
}

// ---- the (tr, tau, S) decomposition and Hodge algebra ---------------------

template <class T>
T trace(const Mat3<T>& a) {
  return a(0, 0) + a(1, 1) + a(2, 2);
}

/// tau(a)_k = sum_ij eps_ijk a_ij.
template <class T>
Vec3<T> tau(const Mat3<T>& a) {
  return {{a(1, 2) - a(2, 1), a(2, 0) - a(0, 2), a(0, 1) - a(1, 0)}};
}

template <class T>
Mat3<T> sym2(const Mat3<T>& a) {
  return a + a.transpose();
}

/// *3 of a 1-form as a skew matrix: (*s)_ij = eps_ijk s_k.
template <class T>
Mat3<T> star_vec(const Vec3<T>& s) {
  Mat3<T> r;
  r(0, 1) = s[2];
  r(1, 0) = -s[2];
  r(1, 2) = s[0];
  r(2, 1) = -s[0];
  r(2, 0) = s[1];
  r(0, 2) = -s[1];
  return r;
}

/// iota(s)m: contraction of s into the first slot, (iota(s)m)_j = sum_i s_i m_ij.
template <class T>
Vec3<T> iota(const Vec3<T>& s, const Mat3<T>& m) {
  return vecmat(s, m);
}

template <class T>
T norm2(const Vec3<T>& a) {
  return dot(a, a);
}

template <class T>
T norm2(const Mat3<T>& a) {
  return frob_inner(a, a);
}

template <class T>
T norm2(const Spinor<T>& s) {
  return inner(s, s);
}

/// Lie bracket on the value bundle, [v, w] = 2 *3 (v ^ w) = 2 v x w.
template <class T>
Vec3<T> bracket(const Vec3<T>& v, const Vec3<T>& w) {
  return cross(v, w) * T(2.0);
}

/// [a ^ xi] for a T*M-valued 1-form a and a section xi: row i is 2 a_i x xi.
template <class T>
Mat3<T> bracket_wedge(const Mat3<T>& a, const Vec3<T>& xi) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i) r.set_row(i, bracket(a.row(i), xi));
  return r;
}

/// *3 [a ^ b] for two T*M-valued 1-forms: row k is sum_ij eps_kij 2 a_i x b_j.
template <class T>
Mat3<T> star_bracket_wedge(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> r;
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    r.set_row(k, bracket(a.row(i), b.row(j)) - bracket(a.row(j), b.row(i)));
  }
  return r;
}

// ---- norms for reporting --------------------------------------------------

inline double max_abs(const Vec3d& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

inline double max_abs(const Mat3d& a) {
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(a(i, j)));
  return r;
}

inline double max_abs(const Spinord& s) { return std::max(std::abs(s.f), max_abs(s.sigma)); }

inline double fro_norm(const Mat3d& a) { return std::sqrt(norm2(a)); }

template <class T>
Vec3d values(const Vec3<T>& a) {
  return {{value_of(a[0]), value_of(a[1]), value_of(a[2])}};
}

template <class T>
Mat3d values(const Mat3<T>& a) {
  Mat3d r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = value_of(a(i, j));
  return r;
}

template <class T>
Spinord values(const Spinor<T>& s) {
  return {value_of(s.f), values(s.sigma)};
}

}  // namespace spsw
