#pragma once

// Circle-invariant configurations on S^1 x Sigma, the block decomposition of
// the curvature equation and the algebra of its last block.
//
// Coordinate 0 of a product chart is the circle direction t; the Sigma frame
// is (e_1, e_2). All block quantities are orthonormal-frame components.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spsw/chart.hpp"
#include "spsw/field.hpp"
#include "spsw/quat.hpp"
#include "spsw/swop.hpp"

namespace spsw {

using Vec2d = std::array<double, 2>;
using Mat2d = std::array<std::array<double, 2>, 2>;

/// B = B11 dt(x)dt + B12 (x) dt + dt (x) B21 + B22, with the first tensor
/// factor being the row (form) index of the 3x3 matrix.
struct BlockTensor {
  double b11 = 0.0;
  Vec2d b12{};  // M(Sigma, t)
  Vec2d b21{};  // M(t, Sigma)
  Mat2d b22{};  // M(Sigma, Sigma)

  BlockTensor& operator+=(const BlockTensor& o);
  BlockTensor& operator*=(double s);
};

BlockTensor operator+(BlockTensor a, const BlockTensor& b);
BlockTensor operator-(BlockTensor a, const BlockTensor& b);
BlockTensor operator*(double s, BlockTensor b);

BlockTensor block_decompose(const Mat3d& m);
Mat3d block_assemble(const BlockTensor& b);
double max_abs(const BlockTensor& b);

/// Hodge star on Sigma: *(v1, v2) = (-v2, v1).
inline Vec2d star_sigma(const Vec2d& v) { return {-v[1], v[0]}; }

/// (beta, delta, f, lambda, omega) as fields with 2, 4 (row-major, form index
/// first), 1, 1 and 2 components. Evaluation ignores the t coordinate.
struct ReducedConfig {
  TensorField beta = zero_field(2);
  TensorField delta = zero_field(4);
  TensorField f = zero_field(1);
  TensorField lambda = zero_field(1);
  TensorField omega = zero_field(2);

  /// a = beta (x) dt + delta, sigma = lambda dt + omega.
  Configuration lift() const;

  /// Random polynomial components of the given degree, centered at `center`.
  static ReducedConfig random(std::mt19937_64& rng, int degree, double amplitude, const Point& center);
};

/// Drops the dependence of a field on coordinate 0.
TensorField circle_invariant(const TensorField& f);

/// The six tensors of the curvature equation, with their displayed prefactors
/// but without the moment normalization:
///   T1 = (f^2 - |sigma|^2) g, T2 = -2 *(f sigma), T3 = sigma (x) sigma,
///   T4 = R_g, T5 = *d_LC a, T6 = 1/2 *[a ^ a].
/// Then F = T4 + T5 + T6 and mu = m (T1 + T2) + T3 with m the moment scale.
inline constexpr int kSixTerms = 6;
std::string_view term_name(int k);
/// The matching block matrix written in reduced variables.
std::string_view term_block_display(int k);

using SixTerms = std::array<BlockTensor, kSixTerms>;

/// Evaluates the six terms from the reduced variables with Sigma derivatives.
SixTerms reduced_terms(const Evaluator& ev, const ReducedConfig& rc, const Point& x);
/// The same six terms computed in 3-D from the lifted configuration.
std::array<Mat3d, kSixTerms> full_terms(const Evaluator& ev, const ReducedConfig& rc, const Point& x);

/// Left minus right of the four reduced equations:
///   first  (B11): R_gSigma + *d beta + <delta ^ delta> - [m (f^2 - lambda^2 - |omega|^2) + lambda^2]
///   second (B21): *d_LC delta + 2 *(beta ^ *delta) - [2 m f *omega + lambda omega]
///   third  (B12): 2 m f *omega - lambda omega
///   fourth (B22): -[m ((f^2 - lambda^2 - |omega|^2) g - 2 f lambda vol) + omega (x) omega]
struct ReducedResidual {
  double first = 0.0;
  Vec2d second{};
  Vec2d third{};
  Mat2d fourth{};

  BlockTensor as_block() const;
};
ReducedResidual reduced_residual(const Evaluator& ev, const ReducedConfig& rc, const Point& x);

// ---- the last block ------------------------------------------------------------

using Unknowns = std::array<double, 4>;  // (f, lambda, omega_1, omega_2)

/// The fourth reduced equation as four numbers (g11, g12, g21, g22 slots).
std::array<double, 4> last_block(const Unknowns& u, double mu_scale);

/// Its three scalar consequences (trace-free part, trace, skew part):
/// omega (x) omega - 1/2 |omega|^2 g = 0 (two components), f^2 - lambda^2 = 0 times m,
/// and f lambda = 0.
struct LastBlockSplit {
  double tracefree_diag = 0.0;  // omega_1^2 - 1/2 |omega|^2
  double tracefree_off = 0.0;   // omega_1 omega_2
  double trace = 0.0;           // m (f^2 - lambda^2 - |omega|^2) + 1/2 |omega|^2, per diagonal entry
  double skew = 0.0;            // f lambda
};
LastBlockSplit split_last_block(const Unknowns& u, double mu_scale);

struct LastBlockReport {
  int samples_per_axis = 0;
  double box = 2.0;
  double tolerance = 0.0;
  std::size_t starts = 0;
  std::size_t converged = 0;
  std::vector<Unknowns> solutions;  // distinct roots after clustering
  double max_root_residual = 0.0;
  bool unique_origin = false;
};

/// Scans [-box, box]^4 on a samples^4 grid and runs damped Newton from every
/// grid point. Roots closer than `tolerance` are merged.
LastBlockReport last_block_solve(int samples_per_axis, double tolerance, double mu_scale, int threads = 1,
                                 double box = 2.0);

nlohmann::json to_json(const LastBlockReport& r);

/// The hypothesis under which the reduction applies, stated as an assumption.
std::string_view circle_invariance_assumption();

}  // namespace spsw
