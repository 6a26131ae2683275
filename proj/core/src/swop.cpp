#include "spsw/swop.hpp"

#include <algorithm>
#include <stdexcept>

namespace spsw {
namespace {

Mat3J to_mat(const std::vector<Jet>& v) {
  Mat3J m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v[3 * i + j];
  return m;
}

Vec3J to_vec(const std::vector<Jet>& v, int offset = 0) { return {{v[offset], v[offset + 1], v[offset + 2]}}; }

void expect_components(const TensorField& f, int n, const char* what) {
  if (f.components() != n)
    throw std::invalid_argument(std::string(what) + " must have " + std::to_string(n) + " components");
}

Mat3J constant_mat(const Mat3d& m) {
  Mat3J r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = Jet(m(i, j));
  return r;
}

Tangent<double> values(const LocalTangent& t) { return {spsw::values(t.a), t.f.value(), spsw::values(t.sigma), spsw::values(t.xi)}; }

double max_abs_slot(const LocalTangent& t, int slot) {
  switch (slot) {
    case 0: return max_abs(spsw::values(t.a));
    case 1: return std::abs(t.f.value());
    case 2: return max_abs(spsw::values(t.sigma));
    default: return max_abs(spsw::values(t.xi));
  }
}

}  // namespace

Configuration Configuration::canonical(double f0) {
  Configuration c;
  c.f = constant_field({f0});
  return c;
}

LocalFields load(const Configuration& c, const Point& x, int order, const Backend& b) {
  expect_components(c.a, 9, "a");
  expect_components(c.f, 1, "f");
  expect_components(c.sigma, 3, "sigma");
  return {to_mat(c.a.jets(x, order, b)), c.f.jets(x, order, b)[0], to_vec(c.sigma.jets(x, order, b))};
}

LocalTangent load(const TangentInput& t, const Point& x, int order, const Backend& b) {
  expect_components(t.a, 9, "a'");
  expect_components(t.f, 1, "f'");
  expect_components(t.sigma, 3, "sigma'");
  expect_components(t.xi, 3, "xi");
  return {to_mat(t.a.jets(x, order, b)), t.f.jets(x, order, b)[0], to_vec(t.sigma.jets(x, order, b)),
          to_vec(t.xi.jets(x, order, b))};
}

SpinorJ load_spinor(const SpinorField& s, const Point& x, int order, const Backend& b) {
  expect_components(s, 4, "spinor");
  const auto v = s.jets(x, order, b);
  return {v[0], to_vec(v, 1)};
}

FieldDerivs<Jet> derivatives(const Frame& fr, const LocalFields& c) {
  return {lc_derivative(fr, c.a), grad(fr, c.f), lc_derivative(fr, c.sigma)};
}

TangentDerivs<Jet> derivatives(const Frame& fr, const LocalTangent& u) {
  return {lc_derivative(fr, u.a), grad(fr, u.f), lc_derivative(fr, u.sigma), lc_derivative(fr, u.xi)};
}

Mat3J ad_connection_derivative(const Frame& fr, const Mat3J& a, const Vec3J& v) {
  return lc_derivative(fr, v) + bracket_wedge(a, v);
}

Mat3d ad_connection_derivative(const Evaluator& ev, const TensorField& a, const TensorField& v, const Point& x) {
  expect_components(a, 9, "a");
  expect_components(v, 3, "v");
  const Frame fr(ev.chart, x, 1);
  return values(ad_connection_derivative(fr, to_mat(a.jets(x, 1, ev.backend)), to_vec(v.jets(x, 1, ev.backend))));
}

std::array<SpinorJ, 3> spin_derivative(const Frame& fr, const Mat3J& a, const SpinorJ& phi) {
  const Mat3J ds = lc_derivative(fr, phi.sigma);
  std::array<SpinorJ, 3> out;
  for (int i = 0; i < 3; ++i) {
    const Vec3J ai = a.row(i);
    out[i].f = fr.e(i, phi.f) + dot(ai, phi.sigma);
    out[i].sigma = ds.row(i) - ai * phi.f + cross(ai, phi.sigma);
  }
  return out;
}

SpinorJ dirac_frame_sum(const Frame& fr, const Mat3J& a, const SpinorJ& phi) {
  const auto d = spin_derivative(fr, a, phi);
  SpinorJ r = clifford(Vec3J::unit(0), d[0]);
  r += clifford(Vec3J::unit(1), d[1]);
  r += clifford(Vec3J::unit(2), d[2]);
  return r;
}

SpinorJ dirac_closed(const Frame& fr, const Mat3J& a, const SpinorJ& phi) {
  const LocalFields c{a, phi.f, phi.sigma};
  return kern::dirac(c, derivatives(fr, c));
}

Spinord dirac(const Evaluator& ev, const Configuration& c, const Point& x) {
  const Frame fr(ev.chart, x, 1);
  const LocalFields lc = load(c, x, 1, ev.backend);
  return values(kern::dirac(lc, derivatives(fr, lc)));
}

Spinord dirac_frame_sum(const Evaluator& ev, const Configuration& c, const Point& x) {
  const Frame fr(ev.chart, x, 1);
  const LocalFields lc = load(c, x, 1, ev.backend);
  return values(dirac_frame_sum(fr, lc.a, SpinorJ{lc.f, lc.sigma}));
}

Mat3J curvature_F(const Frame& fr, const Chart& chart, const Mat3J& a, double riemann_scale) {
  const int order = std::max(0, a(0, 0).order() - 1);
  const Mat3J r = riemann_as_matrix_jet(chart, fr.point(), riemann_scale, order);
  return kern::curvature(r, a, lc_derivative(fr, a));
}

Mat3d curvature_F(const Evaluator& ev, const TensorField& a, const Point& x) {
  expect_components(a, 9, "a");
  const Frame fr(ev.chart, x, 1);
  const Mat3J r = constant_mat(riemann_as_matrix(ev.chart, x, ev.norm.riemann_scale));
  const Mat3J aj = to_mat(a.jets(x, 1, ev.backend));
  return values(kern::curvature(r, aj, lc_derivative(fr, aj)));
}

SwResidual<double> sw_residual(const Evaluator& ev, const Configuration& c, const Point& x) {
  const Frame fr(ev.chart, x, 1);
  const LocalFields lc = load(c, x, 1, ev.backend);
  const Mat3J r = constant_mat(riemann_as_matrix(ev.chart, x, ev.norm.riemann_scale));
  const auto res = kern::sw_residual(r, lc, derivatives(fr, lc), ev.norm);
  return {values(res.curvature), values(res.dirac)};
}

WeitzenboeckTerms weitzenboeck_terms(const Evaluator& ev, const TensorField& a, const SpinorField& phi,
                                     const Point& x) {
  expect_components(a, 9, "a");
  const Frame fr(ev.chart, x, 2);
  const Mat3J aj = to_mat(a.jets(x, 2, ev.backend));
  const SpinorJ p = load_spinor(phi, x, 2, ev.backend);

  const SpinorJ d2 = dirac_frame_sum(fr, aj, dirac_frame_sum(fr, aj, p));

  // nabla* nabla = -sum_i (nabla_i nabla_i - nabla_{nabla_{e_i} e_i}).
  const auto first = spin_derivative(fr, aj, p);
  SpinorJ rough{Jet::constant(0.0, 0), Vec3J{}};
  for (int i = 0; i < 3; ++i) {
    SpinorJ term = spin_derivative(fr, aj, first[i])[i];
    for (int k = 0; k < 3; ++k) term -= first[k] * fr.gamma(i, i, k);
    rough -= term;
  }

  const Mat3d f = values(curvature_F(fr, ev.chart, aj, ev.norm.riemann_scale));
  const Spinord pv = values(p);
  WeitzenboeckTerms t;
  t.d_squared = values(d2);
  t.rough_laplacian = values(rough);
  t.curvature_term = kern::gamma_tilde_matrix(f, pv);
  t.scalar_term = pv * (0.25 * scalar_curvature(ev.chart, x));
  return t;
}

Spinord weitzenboeck_residual(const Evaluator& ev, const TensorField& a, const SpinorField& phi, const Point& x) {
  const auto t = weitzenboeck_terms(ev, a, phi, x);
  return t.d_squared - t.rough_laplacian - t.curvature_term - t.scalar_term;
}

Tangent<double> gauge_lin(const Evaluator& ev, const Configuration& c, const TensorField& xi, const Point& x) {
  expect_components(xi, 3, "xi");
  const Frame fr(ev.chart, x, 1);
  const LocalFields lc = load(c, x, 1, ev.backend);
  const Vec3J xj = to_vec(xi.jets(x, 1, ev.backend));
  return values(kern::gauge(lc, xj, lc_derivative(fr, xj)));
}

Vec3d gauge_lin_adjoint(const Evaluator& ev, const Configuration& c, const TangentInput& u, const Point& x) {
  const Frame fr(ev.chart, x, 1);
  const LocalFields lc = load(c, x, 1, ev.backend);
  const LocalTangent lu = load(u, x, 1, ev.backend);
  return spsw::values(kern::gauge_adjoint(lc, lu, derivatives(fr, lu)));
}

LocalTangent big_L(const Frame& fr, const LocalFields& c, const LocalTangent& u, const Normalization& n) {
  return kern::big_l(c, u, derivatives(fr, u), n);
}

Tangent<double> big_L_apply(const Evaluator& ev, const Configuration& c, const TangentInput& u, const Point& x) {
  const Frame fr(ev.chart, x, 1);
  const LocalFields lc = load(c, x, 1, ev.backend);
  const LocalTangent lu = load(u, x, 1, ev.backend);
  return values(big_L(fr, lc, lu, ev.norm));
}

LocalTangent big_L_squared(const Frame& fr, const LocalFields& c, const LocalTangent& u, const Normalization& n) {
  return big_L(fr, c, big_L(fr, c, u, n), n);
}

Mat3J first_block(const Frame& fr, const Mat3J& a, double c) {
  return laplacian_lc(fr, a) + (Mat3J::identity() * trace(a) + star_vec(tau(a))) * c;
}

LocalTangent claimed_block_diagonal(const Frame& fr, const LocalTangent& u) {
  LocalTangent r;
  r.a = first_block(fr, u.a, 2.0);
  r.f = laplacian(fr, u.f) + u.f * 6.0;
  r.sigma = laplacian(fr, u.sigma) + u.sigma * 5.0;
  r.xi = laplacian_lc(fr, u.xi) + u.xi;
  return r;
}

LocalTangent derived_block_diagonal(const Frame& fr, const LocalTangent& u) {
  LocalTangent r;
  r.a = first_block(fr, u.a, 1.0);
  r.f = laplacian(fr, u.f) + u.f * 3.0;
  r.sigma = laplacian(fr, u.sigma) + u.sigma * 3.0;
  r.xi = laplacian_lc(fr, u.xi) + u.xi;
  return r;
}

LSquaredCheck big_L_squared_check(const Evaluator& ev, const TangentInput& u, const Point& x, DiagonalForm form) {
  const Frame fr(ev.chart, x, 2);
  const LocalFields c = load(Configuration::canonical(1.0), x, 2, ev.backend);
  const LocalTangent full = load(u, x, 2, ev.backend);
  LSquaredCheck out;
  for (int slot = 0; slot < 4; ++slot) {
    LocalTangent part;
    part.f = Jet::constant(0.0, 2);
    switch (slot) {
      case 0: part.a = full.a; break;
      case 1: part.f = full.f; break;
      case 2: part.sigma = full.sigma; break;
      default: part.xi = full.xi; break;
    }
    const LocalTangent sq = big_L_squared(fr, c, part, ev.norm);
    const LocalTangent diag =
        form == DiagonalForm::claimed ? claimed_block_diagonal(fr, part) : derived_block_diagonal(fr, part);
    const LocalTangent diff = sq - diag;
    for (int t = 0; t < 4; ++t) {
      if (t == slot)
        out.diagonal = std::max(out.diagonal, max_abs_slot(diff, t));
      else
        out.off_diagonal = std::max(out.off_diagonal, max_abs_slot(sq, t));
    }
  }
  return out;
}

CodazziResidual codazzi_residual(const Evaluator& ev, const TensorField& a, const Point& x) {
  expect_components(a, 9, "a");
  const Frame fr(ev.chart, x, 1);
  const Mat3J aj = to_mat(a.jets(x, 1, ev.backend));
  const Mat3d av = values(aj);
  return {values(star_d_lc(fr, aj)), trace(av), tau(av)};
}

Mat3d dstar_moment_identity(const Evaluator& ev, const TensorField& a, const SpinorField& phi,
                            const SpinorField& psi, const Point& x) {
  expect_components(a, 9, "a");
  const Frame fr(ev.chart, x, 1);
  const Mat3J aj = to_mat(a.jets(x, 1, ev.backend));
  const SpinorJ p = load_spinor(phi, x, 1, ev.backend);
  const SpinorJ q = load_spinor(psi, x, 1, ev.backend);

  const Mat3J m = moment_bilinear(p, q, ev.norm);
  const Mat3d lhs = values(star_d_lc(fr, m) + star_bracket_wedge(aj, m));

  const Spinord pv = values(p), qv = values(q);
  const Spinord dp = values(dirac_frame_sum(fr, aj, p));
  const Spinord dq = values(dirac_frame_sum(fr, aj, q));
  const Mat3d rhs = moment_bilinear(dp, qv, ev.norm) + moment_bilinear(dq, pv, ev.norm);

  const auto np = spin_derivative(fr, aj, p);
  const auto nq = spin_derivative(fr, aj, q);
  Mat3d rs;
  for (int k = 0; k < 3; ++k)
    for (int mm = 0; mm < 3; ++mm)
      rs(k, mm) = inner(values(np[k]), rho_action(Vec3d::unit(mm), qv)) +
                  inner(values(nq[k]), rho_action(Vec3d::unit(mm), pv));
  return lhs - rhs + rs * 0.5;
}

}  // namespace spsw
