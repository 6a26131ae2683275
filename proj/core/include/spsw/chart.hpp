#pragma once

// Coordinate charts with diagonal closed-form metrics g = diag(h_i^2), their
// orthonormal frames e_i = d_i / h_i, and the frame-level differential
// operators used by the Seiberg-Witten operator stack.

#include <array>
#include <random>
#include <string_view>

#include "spsw/field.hpp"
#include "spsw/tensor.hpp"

namespace spsw {

enum class ChartKind { euclidean, ball, half_space, s1xh2, s1xt2, t3 };

std::string_view to_string(ChartKind k);
bool parse_chart(std::string_view s, ChartKind& out);

class Chart {
 public:
  explicit Chart(ChartKind kind) : kind_(kind) {}

  ChartKind kind() const { return kind_; }
  std::string_view name() const { return to_string(kind_); }

  bool hyperbolic() const { return kind_ == ChartKind::ball || kind_ == ChartKind::half_space; }
  bool flat() const { return kind_ == ChartKind::euclidean || kind_ == ChartKind::s1xt2 || kind_ == ChartKind::t3; }
  /// Product charts S^1 x Sigma use coordinate 0 as the circle direction.
  bool product() const { return kind_ == ChartKind::s1xh2 || kind_ == ChartKind::s1xt2; }

  /// Frame scale factors h_i with g = diag(h_i^2).
  std::array<Jet, 3> scale(const JetPoint& x) const;

  /// Coordinate metric matrix at x.
  Mat3d metric(const Point& x) const;
  /// The coordinate metric as a 6-component field (g00, g01, g02, g11, g12, g22).
  TensorField metric_field() const;

  bool admissible(const Point& x) const;
  /// Throws std::domain_error outside the admissible domain.
  void require_admissible(const Point& x) const;
  /// Uniform sample from the compact sampling region (admissible domain shrunk by the margin).
  Point sample(std::mt19937_64& rng) const;

  static constexpr double kMargin = 0.1;

 private:
  ChartKind kind_;
};

/// Orthonormal-frame connection data at a point, as jets.
///
/// gamma(i, j, k) = G^k_ij with nabla_{e_i} e_j = G^k_ij e_k, valid to `order`.
class Frame {
 public:
  Frame(const Chart& chart, const Point& x, int order);

  int order() const { return order_; }
  const Point& point() const { return x_; }

  /// Frame derivative e_i(u) = (1/h_i) d_i u.
  Jet e(int i, const Jet& u) const { return u.derivative(i) * inv_h_[i]; }
  const Jet& gamma(int i, int j, int k) const { return g_[i][j][k]; }

  /// Coordinate Christoffel symbols Gamma^k_ij at the point.
  double christoffel(int i, int j, int k) const { return coord_gamma_[i][j][k]; }

 private:
  int order_;
  Point x_;
  std::array<Jet, 3> inv_h_;
  std::array<std::array<std::array<Jet, 3>, 3>, 3> g_;
  std::array<std::array<std::array<double, 3>, 3>, 3> coord_gamma_;
};

// Covariant derivative of a T*M-valued 1-form: D[l](i, j) = (nabla_l a)_ij.
using Mat3Grad = std::array<Mat3J, 3>;

// ---- Levi-Civita operators in the orthonormal frame --------------------------

/// Frame gradient of a scalar: (df)_i = e_i f.
Vec3J grad(const Frame& fr, const Jet& f);
/// (nabla_i s)_j as a Mat3 with row i.
Mat3J lc_derivative(const Frame& fr, const Vec3J& s);
Mat3Grad lc_derivative(const Frame& fr, const Mat3J& a);

/// d* on 1-forms: -sum_i (nabla_i s)_i.
Jet codifferential(const Frame& fr, const Vec3J& s);
/// *d on 1-forms: (curl s)_k = eps_kij (nabla_i s)_j.
Vec3J star_d(const Frame& fr, const Vec3J& s);
/// *d_LC on T*M-valued 1-forms: (k, m) -> eps_kij (nabla_i a)_jm.
Mat3J star_d_lc(const Frame& fr, const Mat3J& a);
/// d_LC* on T*M-valued 1-forms: m -> -sum_i (nabla_i a)_im.
Vec3J d_lc_star(const Frame& fr, const Mat3J& a);

/// Hodge star on a 1-form (to a 2-form given as a skew matrix) and back.
template <class T>
Mat3<T> hodge_1to2(const Vec3<T>& s) {
  return star_vec(s);
}
template <class T>
Vec3<T> hodge_2to1(const Mat3<T>& w) {
  return {{(w(1, 2) - w(2, 1)) * 0.5, (w(2, 0) - w(0, 2)) * 0.5, (w(0, 1) - w(1, 0)) * 0.5}};
}

/// Hodge Laplacians: d*d on functions, dd* + d*d on 1-forms.
Jet laplacian(const Frame& fr, const Jet& f);
Vec3J laplacian(const Frame& fr, const Vec3J& s);
/// Delta_LC = d_LC d_LC* + d_LC* d_LC on T*M-valued 1-forms.
Mat3J laplacian_lc(const Frame& fr, const Mat3J& a);
/// Delta_LC = d_LC* d_LC on sections of T*M.
Vec3J laplacian_lc(const Frame& fr, const Vec3J& xi);

// ---- curvature --------------------------------------------------------------

struct Curvature {
  Mat3d ricci;  // orthonormal frame
  double scalar = 0.0;
  /// Ric - 1/2 scal g, twice the double Hodge dual of the Riemann tensor.
  Mat3d einstein;
};

/// Curvature at x from exact derivatives of the closed-form metric.
Curvature curvature(const Chart& chart, const Point& x);

/// R_g under the Omega^2(T*M) = Mat3 identification: scale * (Ric - 1/2 scal g).
Mat3d riemann_as_matrix(const Chart& chart, const Point& x, double scale);
double scalar_curvature(const Chart& chart, const Point& x);

/// Curvature as jets of the given order (used when R_g must be differentiated).
Mat3J riemann_as_matrix_jet(const Chart& chart, const Point& x, double scale, int order);
Jet scalar_curvature_jet(const Chart& chart, const Point& x, int order);

struct TrTauS {
  double tr;
  Vec3d tau;
  Mat3d s;
};
TrTauS tr_tau_S(const Mat3d& a);

// ---- Schouten and Cotton for a general coordinate metric ----------------------

struct CottonData {
  Mat3d schouten;  // coordinate (0,2) components
  Mat3d cotton;    // coordinate (0,2) components, C_mj = eps_m^{ki} nabla_k P_ij
  Mat3d metric;
};

/// Evaluates Schouten and Cotton tensors of a 6-component metric field at x.
CottonData cotton(const TensorField& metric, const Point& x, const Backend& backend);
CottonData cotton(const Chart& chart, const Point& x);
Mat3d schouten(const Chart& chart, const Point& x);

/// Trace g^{ij} C_ij and skew part norm of a (0,2) tensor relative to g.
double metric_trace(const Mat3d& metric, const Mat3d& c);
double skew_norm(const Mat3d& c);

}  // namespace spsw
