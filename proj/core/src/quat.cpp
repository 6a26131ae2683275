#include "spsw/quat.hpp"

namespace spsw {

Mat3d moment_abstract(const Quaternion& phi, const Quaternion& psi) {
  Mat3d r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = 0.5 * inner(gamma_tilde(Vec3d::unit(i), Vec3d::unit(j), phi), psi);
  return r;
}

std::string_view to_string(const Normalization& n) {
  if (n == Normalization::consistent()) return "consistent";
  if (n == Normalization::literal()) return "literal";
  return "custom";
}

bool parse_normalization(std::string_view s, Normalization& out) {
  if (s == "consistent") {
    out = Normalization::consistent();
    return true;
  }
  if (s == "literal") {
    out = Normalization::literal();
    return true;
  }
  return false;
}

Mat3d bracket_moment_identity(const Vec3d& xi, const Spinord& phi, const Spinord& psi, const Normalization& n) {
  return bracket_rows(xi, moment_bilinear(phi, psi, n)) - moment_bilinear(phi, rho_action(xi, psi), n) -
         moment_bilinear(psi, rho_action(xi, phi), n);
}

double moment_chain_residual(const Spinord& s, const Vec3d& nu, const Vec3d& xi, const Normalization& n) {
  const double lhs = 2.0 * frob_inner(moment_explicit(s, n), outer(nu, xi));
  const double rhs = -inner(s, gamma_pm(+1, nu, gamma_pm(-1, xi, s)));
  return lhs - rhs;
}

Mat3d moment_equivariance_residual(const Vec3d& xi, const Spinord& s, const Normalization& n) {
  return bracket_rows(xi, moment_explicit(s, n)) - moment_derivative(s, rho_action(xi, s), n);
}

Mat3d rotation_matrix(const Quaternion& p) {
  Mat3d r;
  for (int j = 0; j < 3; ++j) {
    const Quaternion image = p * Quaternion::imaginary(Vec3d::unit(j)) * p.conj();
    for (int i = 0; i < 3; ++i) r(i, j) = image.im[i];
  }
  return r;
}

Mat3d moment_rotation_residual(const Quaternion& p, const Spinord& s, const Normalization& n) {
  const Spinord rotated = quat_rho(p, Quaternion::from_spinor(s)).to_spinor();
  return moment_explicit(rotated, n) - matmul(moment_explicit(s, n), rotation_matrix(p).transpose());
}

}  // namespace spsw
