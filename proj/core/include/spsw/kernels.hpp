#pragma once

// Pointwise Seiberg-Witten algebra, generic over the scalar type.
//
// Every kernel takes field values plus their first covariant derivatives in
// the orthonormal frame, so it serves both the chart operators (Jet scalars,
// derivatives from the frame connection) and the spectral torus solver
// (double scalars, derivatives from FFTs).

#include <array>

#include "spsw/quat.hpp"
#include "spsw/tensor.hpp"

namespace spsw {

template <class T>
struct Fields {
  Mat3<T> a{};
  T f{};
  Vec3<T> sigma{};
};

/// First covariant derivatives: da[l](i, j) = (nabla_l a)_ij, df_i = e_i f,
/// dsigma(i, j) = (nabla_i sigma)_j.
template <class T>
struct FieldDerivs {
  std::array<Mat3<T>, 3> da{};
  Vec3<T> df{};
  Mat3<T> dsigma{};
};

/// Tangent vector to configuration space together with the gauge slot xi.
template <class T>
struct Tangent {
  Mat3<T> a{};
  T f{};
  Vec3<T> sigma{};
  Vec3<T> xi{};

  Tangent& operator+=(const Tangent& o) {
    a += o.a;
    f += o.f;
    sigma += o.sigma;
    xi += o.xi;
    return *this;
  }
  Tangent& operator-=(const Tangent& o) {
    a -= o.a;
    f -= o.f;
    sigma -= o.sigma;
    xi -= o.xi;
    return *this;
  }
  friend Tangent operator+(Tangent x, const Tangent& y) { return x += y; }
  friend Tangent operator-(Tangent x, const Tangent& y) { return x -= y; }
};

template <class T>
struct TangentDerivs {
  std::array<Mat3<T>, 3> da{};
  Vec3<T> df{};
  Mat3<T> dsigma{};
  Mat3<T> dxi{};
};

template <class T>
struct SwResidual {
  Mat3<T> curvature{};
  Spinor<T> dirac{};
};

namespace kern {

template <class T>
Mat3<T> star_d_lc(const std::array<Mat3<T>, 3>& da) {
  Mat3<T> r;
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    for (int m = 0; m < 3; ++m) r(k, m) = da[i](j, m) - da[j](i, m);
  }
  return r;
}

template <class T>
Vec3<T> d_lc_star(const std::array<Mat3<T>, 3>& da) {
  Vec3<T> r;
  for (int m = 0; m < 3; ++m) r[m] = -(da[0](0, m) + da[1](1, m) + da[2](2, m));
  return r;
}

template <class T>
T codiff(const Mat3<T>& ds) {
  return -trace(ds);
}

template <class T>
Vec3<T> curl(const Mat3<T>& ds) {
  return tau(ds);
}

/// Row-wise 2 a_i x xi: the bracket [a ^ xi] of a T*M-valued 1-form with a section.
template <class T>
Mat3<T> bracket_a_xi(const Mat3<T>& a, const Vec3<T>& xi) {
  return bracket_wedge(a, xi);
}

/// sum_i 2 a_i x b_i, the pointwise adjoint partner of bracket_a_xi.
template <class T>
Vec3<T> bracket_contract(const Mat3<T>& a, const Mat3<T>& b) {
  Vec3<T> r;
  for (int i = 0; i < 3; ++i) r += bracket(a.row(i), b.row(i));
  return r;
}

/// Closed-form Dirac operator
/// (d*s - <tau(a), s> + tr(a) f,  df + *ds - f tau(a) - tr(a) s + iota(s) S(a)).
template <class T>
Spinor<T> dirac(const Fields<T>& c, const FieldDerivs<T>& d) {
  const T tr = trace(c.a);
  const Vec3<T> ta = tau(c.a);
  Spinor<T> r;
  r.f = codiff(d.dsigma) - dot(ta, c.sigma) + tr * c.f;
  r.sigma = d.df + curl(d.dsigma) - ta * c.f - c.sigma * tr + iota(c.sigma, sym2(c.a));
  return r;
}

/// B(a, s) = sum_i (e^i iota(a(e_i)) s + *(e^i ^ *(a(e_i) ^ s))), evaluated as the frame sum.
template <class T>
Vec3<T> b_frame_sum(const Mat3<T>& a, const Vec3<T>& s) {
  Vec3<T> r;
  for (int i = 0; i < 3; ++i) {
    const Vec3<T> ai = a.row(i);
    Vec3<T> term = cross(Vec3<T>::unit(i), cross(ai, s));
    term[i] += dot(ai, s);
    r += term;
  }
  return r;
}

/// F = R_g + *d_LC a + 1/2 *[a ^ a].
template <class T>
Mat3<T> curvature(const Mat3<T>& riemann, const Mat3<T>& a, const std::array<Mat3<T>, 3>& da) {
  return riemann + star_d_lc(da) + star_bracket_wedge(a, a) * 0.5;
}

template <class T>
SwResidual<T> sw_residual(const Mat3<T>& riemann, const Fields<T>& c, const FieldDerivs<T>& d,
                          const Normalization& n) {
  SwResidual<T> r;
  r.curvature = curvature(riemann, c.a, d.da) - moment_explicit(Spinor<T>{c.f, c.sigma}, n);
  r.dirac = dirac(c, d);
  return r;
}

/// Linearized SW map at c in direction (a', f', s'); the Dirac rows enter with
/// a minus sign, as in the gauge-fixed operator.
template <class T>
SwResidual<T> dsw(const Fields<T>& c, const Tangent<T>& u, const TangentDerivs<T>& du, const Normalization& n) {
  SwResidual<T> r;
  r.curvature = star_d_lc(du.da) + star_bracket_wedge(c.a, u.a) -
                moment_derivative(Spinor<T>{c.f, c.sigma}, Spinor<T>{u.f, u.sigma}, n);
  // Dirac is linear in a for fixed spinor (the algebraic part) and affine in
  // the spinor for fixed a.
  const Spinor<T> a_part = dirac(Fields<T>{u.a, c.f, c.sigma}, FieldDerivs<T>{});
  FieldDerivs<T> d2;
  d2.df = du.df;
  d2.dsigma = du.dsigma;
  r.dirac = -(a_part + dirac(Fields<T>{c.a, u.f, u.sigma}, d2));
  return r;
}

/// G xi = (-nabla xi - [a ^ xi], <s, xi>, -f xi - xi x s).
template <class T>
Tangent<T> gauge(const Fields<T>& c, const Vec3<T>& xi, const Mat3<T>& dxi) {
  Tangent<T> r;
  r.a = -dxi - bracket_a_xi(c.a, xi);
  r.f = dot(c.sigma, xi);
  r.sigma = -(xi * c.f) - cross(xi, c.sigma);
  return r;
}

/// G* (a', f', s') = -d_LC* a' + sum_i 2 a_i x a'_i + f' s - f s' - s x s'.
template <class T>
Vec3<T> gauge_adjoint(const Fields<T>& c, const Tangent<T>& u, const TangentDerivs<T>& du) {
  return -d_lc_star(du.da) + bracket_contract(c.a, u.a) + c.sigma * u.f - u.sigma * c.f - cross(c.sigma, u.sigma);
}

/// The gauge-fixed linearization [[dSW, G], [G*, 0]] applied to u.
template <class T>
Tangent<T> big_l(const Fields<T>& c, const Tangent<T>& u, const TangentDerivs<T>& du, const Normalization& n) {
  const SwResidual<T> s = dsw(c, u, du, n);
  const Tangent<T> g = gauge(c, u.xi, du.dxi);
  Tangent<T> r;
  r.a = s.curvature + g.a;
  r.f = s.dirac.f + g.f;
  r.sigma = s.dirac.sigma + g.sigma;
  r.xi = gauge_adjoint(c, u, du);
  return r;
}

/// gamma~(M) Phi = sum_km M_km gamma_+(e_k) rho(e_m) Phi.
template <class T>
Spinor<T> gamma_tilde_matrix(const Mat3<T>& m, const Spinor<T>& phi) {
  Spinor<T> r;
  for (int mm = 0; mm < 3; ++mm) {
    const Spinor<T> rp = rho_action(Vec3<T>::unit(mm), phi);
    for (int k = 0; k < 3; ++k) r += gamma_pm(+1, Vec3<T>::unit(k), rp) * m(k, mm);
  }
  return r;
}

}  // namespace kern
}  // namespace spsw
