#pragma once

// Quaternionic representation algebra and the moment map.
//
// A spinor (f, sigma) is identified with the quaternion f + s1 i + s2 j + s3 k.
// Under this identification gamma_pm(+, v) is left multiplication by v and
// rho(xi) = -gamma_pm(-, xi) is right multiplication by conj(xi).

#include <string_view>

#include "spsw/tensor.hpp"

namespace spsw {

struct Quaternion {
  double re = 0.0;
  Vec3d im{};

  static Quaternion from_spinor(const Spinord& s) { return {s.f, s.sigma}; }
  Spinord to_spinor() const { return {re, im}; }
  static Quaternion imaginary(const Vec3d& v) { return {0.0, v}; }

  Quaternion conj() const { return {re, -im}; }
  double norm2() const { return re * re + spsw::norm2(im); }

  friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.re * q.re - dot(p.im, q.im), q.im * p.re + p.im * q.re + cross(p.im, q.im)};
  }
  friend Quaternion operator+(const Quaternion& p, const Quaternion& q) { return {p.re + q.re, p.im + q.im}; }
  friend Quaternion operator-(const Quaternion& p, const Quaternion& q) { return {p.re - q.re, p.im - q.im}; }
  friend Quaternion operator*(double s, const Quaternion& q) { return {s * q.re, q.im * s}; }
};

inline double inner(const Quaternion& p, const Quaternion& q) { return p.re * q.re + dot(p.im, q.im); }

/// gamma(p) Phi = p Phi.
inline Quaternion quat_gamma(const Quaternion& p, const Quaternion& phi) { return p * phi; }
/// rho(p) Phi = Phi conj(p).
inline Quaternion quat_rho(const Quaternion& p, const Quaternion& phi) { return phi * p.conj(); }
/// gamma~(v (x) xi) Phi = gamma(v) rho(xi) Phi = -v Phi xi for imaginary v, xi.
inline Quaternion gamma_tilde(const Vec3d& v, const Vec3d& xi, const Quaternion& phi) {
  return quat_gamma(Quaternion::imaginary(v), quat_rho(Quaternion::imaginary(xi), phi));
}

/// Abstract moment map: mu(Phi, Psi)_ij = 1/2 <gamma~(e_i (x) e_j) Phi, Psi>.
/// gamma~(v (x) xi) is a product of two commuting skew operators, hence symmetric,
/// so this is the polarization of mu(Phi) = mu(Phi, Phi).
Mat3d moment_abstract(const Quaternion& phi, const Quaternion& psi);

// ---- explicit R + R^3 form ---------------------------------------------------

/// (-<nu, sigma>, f nu +- nu x sigma).
template <class T>
Spinor<T> gamma_pm(int sign, const Vec3<T>& nu, const Spinor<T>& s) {
  Vec3<T> c = cross(nu, s.sigma);
  if (sign < 0) c = -c;
  return {-dot(nu, s.sigma), nu * s.f + c};
}

/// Clifford multiplication gamma = gamma_+.
template <class T>
Spinor<T> clifford(const Vec3<T>& nu, const Spinor<T>& s) {
  return gamma_pm(+1, nu, s);
}

/// rho = -gamma_-.
template <class T>
Spinor<T> rho_action(const Vec3<T>& xi, const Spinor<T>& s) {
  return -gamma_pm(-1, xi, s);
}

/// Scale conventions for the moment map and the Riemann term of the curvature.
///
/// consistent: mu = 1/2 gamma~*(Phi Phi*), i.e. 1/2 (f^2 - |s|^2) g - f *s + s (x) s,
///   and R_g = 1/2 (Ric - 1/2 scal g). All identities of the theory hold.
/// literal:    mu = (f^2 - |s|^2) g - 2 f *s + s (x) s and R_g = Ric - 1/2 scal g,
///   matching the closed forms as they are usually displayed (mu(1,0) = g and
///   R_g = g on hyperbolic space).
struct Normalization {
  double mu_scale = 0.5;
  double riemann_scale = 0.5;

  static constexpr Normalization consistent() { return {0.5, 0.5}; }
  static constexpr Normalization literal() { return {1.0, 1.0}; }
  bool operator==(const Normalization&) const = default;
};

std::string_view to_string(const Normalization& n);
/// Parses "consistent" or "literal"; returns false on anything else.
bool parse_normalization(std::string_view s, Normalization& out);

/// mu(f, sigma) = m [(f^2 - |sigma|^2) g - 2 f *sigma] + sigma (x) sigma.
template <class T>
Mat3<T> moment_explicit(const Spinor<T>& s, const Normalization& n = Normalization::consistent()) {
  Mat3<T> r = Mat3<T>::identity() * (s.f * s.f - norm2(s.sigma));
  r -= star_vec(s.sigma) * (s.f * 2.0);
  r *= n.mu_scale;
  r += outer(s.sigma, s.sigma);
  return r;
}

/// Symmetric bilinear moment map mu(phi, psi) by polarization.
template <class T>
Mat3<T> moment_bilinear(const Spinor<T>& p, const Spinor<T>& q,
                        const Normalization& n = Normalization::consistent()) {
  const T m = T(n.mu_scale);
  Mat3<T> r = Mat3<T>::identity() * (p.f * q.f - dot(p.sigma, q.sigma));
  r -= star_vec(p.sigma * q.f + q.sigma * p.f);
  r *= m;
  r += (outer(p.sigma, q.sigma) + outer(q.sigma, p.sigma)) * 0.5;
  return r;
}

/// Directional derivative d mu_s (ds) = 2 mu(s, ds).
template <class T>
Mat3<T> moment_derivative(const Spinor<T>& s, const Spinor<T>& ds,
                          const Normalization& n = Normalization::consistent()) {
  return moment_bilinear(s, ds, n) * 2.0;
}

/// Row-wise bracket [xi, m]: row i is 2 xi x m_i.
template <class T>
Mat3<T> bracket_rows(const Vec3<T>& xi, const Mat3<T>& m) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i) r.set_row(i, bracket(xi, m.row(i)));
  return r;
}

/// [xi, mu(phi, psi)] - mu(phi, rho(xi) psi) - mu(psi, rho(xi) phi).
Mat3d bracket_moment_identity(const Vec3d& xi, const Spinord& phi, const Spinord& psi,
                              const Normalization& n = Normalization::consistent());

/// 2 <mu(s), nu (x) xi> + <s, gamma_+(nu) gamma_-(xi) s>.
double moment_chain_residual(const Spinord& s, const Vec3d& nu, const Vec3d& xi,
                             const Normalization& n = Normalization::consistent());

/// Infinitesimal rho-equivariance: [xi, mu(s)] - d mu_s(rho(xi) s).
Mat3d moment_equivariance_residual(const Vec3d& xi, const Spinord& s,
                                   const Normalization& n = Normalization::consistent());

/// Finite rho-equivariance: mu(rho(p) s) - Ad(p) mu(s) for a unit quaternion p,
/// where Ad(p) rotates the value slot by v -> p v conj(p).
Mat3d moment_rotation_residual(const Quaternion& p, const Spinord& s,
                               const Normalization& n = Normalization::consistent());

/// The rotation v -> p v conj(p) of Im H for a unit quaternion p, as a matrix.
Mat3d rotation_matrix(const Quaternion& p);

}  // namespace spsw
