#pragma once

// The Sp(1)-Seiberg-Witten operator stack on a chart.
//
// Configurations and tangents are closed-form fields whose components are
// orthonormal-frame components. Every operator loads local jets at a point,
// differentiates them with the frame connection and evaluates the shared
// pointwise kernels.

#include <array>

#include "spsw/chart.hpp"
#include "spsw/field.hpp"
#include "spsw/kernels.hpp"
#include "spsw/quat.hpp"

namespace spsw {

/// (a, f, sigma) as fields with 9, 1 and 3 components.
struct Configuration {
  TensorField a = zero_field(9);
  TensorField f = zero_field(1);
  TensorField sigma = zero_field(3);

  /// (0, f0, 0) with constant f0.
  static Configuration canonical(double f0);
};

/// (a', f', sigma', xi) as fields with 9, 1, 3 and 3 components.
struct TangentInput {
  TensorField a = zero_field(9);
  TensorField f = zero_field(1);
  TensorField sigma = zero_field(3);
  TensorField xi = zero_field(3);
};

/// A spinor field (f, sigma) with 1 + 3 components packed in one field.
using SpinorField = TensorField;

using LocalFields = Fields<Jet>;
using LocalTangent = Tangent<Jet>;

/// Everything an operator needs at one point.
struct Evaluator {
  Chart chart;
  Backend backend = Backend::ad();
  Normalization norm = Normalization::consistent();
};

LocalFields load(const Configuration& c, const Point& x, int order, const Backend& b);
LocalTangent load(const TangentInput& t, const Point& x, int order, const Backend& b);
SpinorJ load_spinor(const SpinorField& s, const Point& x, int order, const Backend& b);

FieldDerivs<Jet> derivatives(const Frame& fr, const LocalFields& c);
TangentDerivs<Jet> derivatives(const Frame& fr, const LocalTangent& u);

// ---- connection and Dirac ----------------------------------------------------

/// ad(A) v = nabla v + [a, v]: row i is (nabla_i v) + 2 a_i x v.
Mat3J ad_connection_derivative(const Frame& fr, const Mat3J& a, const Vec3J& v);
Mat3d ad_connection_derivative(const Evaluator& ev, const TensorField& a, const TensorField& v, const Point& x);

/// Spin connection nabla_{A, e_i} on a spinor: (e_i f + a_i.s, -a_i f + nabla_i s + a_i x s).
std::array<SpinorJ, 3> spin_derivative(const Frame& fr, const Mat3J& a, const SpinorJ& phi);

/// Dirac operator as the frame sum sum_i gamma(e_i) nabla_{A, e_i}.
SpinorJ dirac_frame_sum(const Frame& fr, const Mat3J& a, const SpinorJ& phi);
/// Dirac operator from the closed formula.
SpinorJ dirac_closed(const Frame& fr, const Mat3J& a, const SpinorJ& phi);

Spinord dirac(const Evaluator& ev, const Configuration& c, const Point& x);
Spinord dirac_frame_sum(const Evaluator& ev, const Configuration& c, const Point& x);

/// iota(s) S(a) - tr(a) s, the value of the frame sum B(a, s).
template <class T>
Vec3<T> b_identity_closed(const Mat3<T>& a, const Vec3<T>& s) {
  return iota(s, sym2(a)) - s * trace(a);
}

// ---- curvature and the SW system ----------------------------------------------

Mat3J curvature_F(const Frame& fr, const Chart& chart, const Mat3J& a, double riemann_scale);
Mat3d curvature_F(const Evaluator& ev, const TensorField& a, const Point& x);

SwResidual<double> sw_residual(const Evaluator& ev, const Configuration& c, const Point& x);

/// D^2 Phi - nabla*nabla Phi - gamma~(F) Phi - scal/4 Phi.
Spinord weitzenboeck_residual(const Evaluator& ev, const TensorField& a, const SpinorField& phi, const Point& x);

struct WeitzenboeckTerms {
  Spinord d_squared, rough_laplacian, curvature_term, scalar_term;
};
WeitzenboeckTerms weitzenboeck_terms(const Evaluator& ev, const TensorField& a, const SpinorField& phi,
                                     const Point& x);

// ---- gauge and the linearization --------------------------------------------------

Tangent<double> gauge_lin(const Evaluator& ev, const Configuration& c, const TensorField& xi, const Point& x);
Vec3d gauge_lin_adjoint(const Evaluator& ev, const Configuration& c, const TangentInput& u, const Point& x);

/// The gauge-fixed linearization at a point, with jets of the requested order.
LocalTangent big_L(const Frame& fr, const LocalFields& c, const LocalTangent& u, const Normalization& n);
Tangent<double> big_L_apply(const Evaluator& ev, const Configuration& c, const TangentInput& u, const Point& x);

/// L(L(u)); needs tangent jets of order 2.
LocalTangent big_L_squared(const Frame& fr, const LocalFields& c, const LocalTangent& u, const Normalization& n);

/// diag(Delta_LC + 2 g tr + 2 *tau, Delta + 6, Delta + 5, Delta_LC + 1).
LocalTangent claimed_block_diagonal(const Frame& fr, const LocalTangent& u);
/// diag(Delta_LC + g tr + *tau, Delta + 3, Delta + 3, Delta_LC + 1): the block
/// diagonal the consistent normalization produces at (0, 1, 0).
LocalTangent derived_block_diagonal(const Frame& fr, const LocalTangent& u);

/// First diagonal block Delta_LC a + c (g tr(a) + *tau(a)).
Mat3J first_block(const Frame& fr, const Mat3J& a, double c);

struct LSquaredCheck {
  /// max |(L^2 u)_s - (claimed u)_s| over the slot s the input occupies.
  double diagonal = 0.0;
  /// max |(L^2 u)_t| over slots t other than the input slot.
  double off_diagonal = 0.0;
};

/// Feeds each slot of u separately through L^2 at (0, 1, 0) and compares with
/// `diagonal` (claimed or derived).
enum class DiagonalForm { claimed, derived };
LSquaredCheck big_L_squared_check(const Evaluator& ev, const TangentInput& u, const Point& x,
                                  DiagonalForm form = DiagonalForm::claimed);

// ---- Codazzi and the moment identity -----------------------------------------------

struct CodazziResidual {
  Mat3d star_d_lc;
  double trace;
  Vec3d tau;
};
CodazziResidual codazzi_residual(const Evaluator& ev, const TensorField& a, const Point& x);

/// *d_A mu(phi, psi) - mu(D phi, psi) - mu(D psi, phi) + 1/2 rho*((nabla phi) psi* + (nabla psi) phi*).
Mat3d dstar_moment_identity(const Evaluator& ev, const TensorField& a, const SpinorField& phi,
                            const SpinorField& psi, const Point& x);

}  // namespace spsw
