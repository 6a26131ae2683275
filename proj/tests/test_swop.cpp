#include <doctest.h>

#include <cmath>
#include <random>

#include <spsw/swop.hpp>

#include "support.hpp"

using namespace spsw;

namespace {

Evaluator make(ChartKind k, Backend b = Backend::ad(), Normalization n = Normalization::consistent()) {
  return {Chart(k), b, n};
}

TensorField poly(std::mt19937_64& rng, int comps, double amp = 0.5, int degree = 3) {
  return random_polynomial_field(rng, comps, degree, amp);
}

Configuration random_config(std::mt19937_64& rng, double amp = 0.5) {
  Configuration c;
  c.a = poly(rng, 9, amp);
  c.f = poly(rng, 1, amp);
  c.sigma = poly(rng, 3, amp);
  return c;
}

TangentInput random_tangent(std::mt19937_64& rng, double amp = 0.5) {
  TangentInput u;
  u.a = poly(rng, 9, amp);
  u.f = poly(rng, 1, amp);
  u.sigma = poly(rng, 3, amp);
  u.xi = poly(rng, 3, amp);
  return u;
}

double max_abs_t(const Tangent<double>& t) {
  return std::max({max_abs(t.a), std::abs(t.f), max_abs(t.sigma), max_abs(t.xi)});
}

// A field evaluated only through point values, so derivatives come from the fd stencil.
template <class Fn>
TensorField pointwise(int comps, Fn fn) {
  return TensorField(comps, [comps, fn](const JetPoint& p) {
    const Point x{p[0].value(), p[1].value(), p[2].value()};
    const std::vector<double> v = fn(x);
    std::vector<Jet> out(comps);
    for (int i = 0; i < comps; ++i) out[i] = Jet::constant(v[i], p[0].order());
    return out;
  });
}

constexpr ChartKind kHyperbolic[] = {ChartKind::ball, ChartKind::half_space};
constexpr ChartKind kMixed[] = {ChartKind::euclidean, ChartKind::ball, ChartKind::half_space, ChartKind::s1xh2};

}  // namespace

TEST_SUITE("swop") {
  TEST_CASE("adjoint connection") {
    std::mt19937_64 rng(1);
    const TensorField v = poly(rng, 3);
    for (auto k : kMixed) {
      const Evaluator ev = make(k);
      const Point x = ev.chart.sample(rng);
      const Frame fr(ev.chart, x, 1);
      const Vec3J vj{{v.jets(x, 1, ev.backend)[0], v.jets(x, 1, ev.backend)[1], v.jets(x, 1, ev.backend)[2]}};
      CHECK(max_abs(ad_connection_derivative(ev, zero_field(9), v, x) - values(lc_derivative(fr, vj))) < 1e-14);
    }
    // constant a and v on flat space: only 2 a_i x v remains
    const Evaluator ev = make(ChartKind::euclidean);
    const Mat3d a = test::random_mat(rng);
    const Vec3d vv = test::random_vec(rng);
    const Mat3d got = ad_connection_derivative(ev, constant_field({a(0, 0), a(0, 1), a(0, 2), a(1, 0), a(1, 1), a(1, 2),
                                                                   a(2, 0), a(2, 1), a(2, 2)}),
                                               constant_field({vv[0], vv[1], vv[2]}), {0.1, 0.2, 0.3});
    for (int i = 0; i < 3; ++i) CHECK(max_abs(got.row(i) - cross(a.row(i), vv) * 2.0) < 1e-15);
  }

  TEST_CASE("adjoint connection is metric") {
    std::mt19937_64 rng(2);
    for (auto k : kMixed) {
      const Evaluator ev = make(k);
      const TensorField a = poly(rng, 9), v = poly(rng, 3), w = poly(rng, 3);
      const TensorField vw(1, [v, w](const JetPoint& p) {
        const auto a1 = v(p), b1 = w(p);
        return std::vector<Jet>{a1[0] * b1[0] + a1[1] * b1[1] + a1[2] * b1[2]};
      });
      for (int n = 0; n < 5; ++n) {
        const Point x = ev.chart.sample(rng);
        const Frame fr(ev.chart, x, 1);
        const Vec3d d = values(grad(fr, vw.jets(x, 1, ev.backend)[0]));
        const Mat3d nv = ad_connection_derivative(ev, a, v, x), nw = ad_connection_derivative(ev, a, w, x);
        const auto vv = v.values(x), wv = w.values(x);
        for (int i = 0; i < 3; ++i) {
          const double rhs = dot(nv.row(i), Vec3d{{wv[0], wv[1], wv[2]}}) + dot(Vec3d{{vv[0], vv[1], vv[2]}}, nw.row(i));
          CHECK(d[i] == doctest::Approx(rhs).epsilon(1e-10));
        }
      }
    }
  }

  TEST_CASE("curvature of the connection") {
    std::mt19937_64 rng(3);
    for (auto k : kHyperbolic) {
      const Evaluator ev = make(k, Backend::ad(), Normalization::literal());
      const Point x = ev.chart.sample(rng);
      CHECK(max_abs(curvature_F(ev, zero_field(9), x) - Mat3d::identity()) < 1e-10);
    }
    const Evaluator flat = make(ChartKind::t3);
    CHECK(max_abs(curvature_F(flat, zero_field(9), {1.0, 2.0, 3.0})) == 0.0);
    // constant a on flat space: 1/2 *[a ^ a], row k = sum_ij eps_kij a_i x a_j
    const Mat3d a = test::random_mat(rng);
    std::vector<double> av;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) av.push_back(a(i, j));
    Mat3d oracle;
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int m = 0; m < 3; ++m)
            for (int p = 0; p < 3; ++p)
              for (int q = 0; q < 3; ++q) oracle(k, m) += eps(k, i, j) * eps(m, p, q) * a(i, p) * a(j, q);
    CHECK(max_abs(curvature_F(make(ChartKind::euclidean), constant_field(av), {0, 0, 0}) - oracle) < 1e-14);
  }

  TEST_CASE("Dirac operator") {
    for (auto k : kMixed) {
      const Evaluator ev = make(k);
      std::mt19937_64 rng(4);
      const Point x = ev.chart.sample(rng);
      CHECK(max_abs(dirac(ev, Configuration::canonical(1.0), x)) == 0.0);
    }
    Configuration c;
    c.f = TensorField(1, [](const JetPoint& p) { return std::vector<Jet>{p[0]}; });
    const Spinord d = dirac(make(ChartKind::euclidean), c, {0.3, 0.1, -0.2});
    CHECK(max_abs(d - Spinord{0.0, Vec3d::unit(0)}) < 1e-15);

    std::mt19937_64 rng(5);
    for (auto k : kMixed)
      for (int n = 0; n < 10; ++n) {
        const Configuration rc = random_config(rng);
        for (auto b : {Backend::ad(), Backend::fd()}) {
          const Evaluator ev = make(k, b);
          const Point x = ev.chart.sample(rng);
          const Spinord closed = dirac(ev, rc, x), sum = dirac_frame_sum(ev, rc, x);
          CHECK(max_abs(closed - sum) <= 1e-10 * std::max(1.0, max_abs(sum)));
        }
      }
  }

  TEST_CASE("B identity") {
    std::mt19937_64 rng(6);
    for (int n = 0; n < 200; ++n) {
      const Mat3d a = test::random_mat(rng);
      const Vec3d s = test::random_vec(rng);
      CHECK(max_abs(kern::b_frame_sum(a, s) - b_identity_closed(a, s)) < 1e-14);
    }
  }

  TEST_CASE("canonical solutions on hyperbolic charts") {
    std::mt19937_64 rng(7);
    for (auto norm : {Normalization::consistent(), Normalization::literal()})
      for (auto k : kHyperbolic)
        for (double f0 : {1.0, -1.0}) {
          const Evaluator ev = make(k, Backend::ad(), norm);
          for (int n = 0; n < 50; ++n) {
            const auto r = sw_residual(ev, Configuration::canonical(f0), ev.chart.sample(rng));
            CHECK(max_abs(r.curvature) < 1e-10);
            CHECK(max_abs(r.dirac) < 1e-10);
          }
        }
    const auto r = sw_residual(make(ChartKind::t3), Configuration::canonical(1.0), {1, 1, 1});
    CHECK(max_abs(r.curvature + Mat3d::identity() * 0.5) < 1e-15);
    const auto rl = sw_residual(make(ChartKind::t3, Backend::ad(), Normalization::literal()),
                                Configuration::canonical(1.0), {1, 1, 1});
    CHECK(max_abs(rl.curvature + Mat3d::identity()) < 1e-15);
  }

  TEST_CASE("Weitzenboeck formula") {
    CHECK(max_abs(weitzenboeck_residual(make(ChartKind::euclidean), zero_field(9), constant_field({1, 2, 3, 4}),
                                        {0.1, 0.2, 0.3})) < 1e-14);
    const TensorField cosphi(4, [](const JetPoint& p) {
      const Jet z = Jet::constant(0.0, p[0].order());
      return std::vector<Jet>{cos(p[0]), z, z, z};
    });
    CHECK(max_abs(weitzenboeck_residual(make(ChartKind::t3), zero_field(9), cosphi, {0.7, 1.0, 2.0})) < 1e-8);

    std::mt19937_64 rng(8);
    for (auto k : kMixed)
      for (int n = 0; n < 5; ++n) {
        const TensorField a = poly(rng, 9, 0.3), phi = poly(rng, 4, 0.5);
        const Point x = Chart(k).sample(rng);
        const Spinord ad = weitzenboeck_residual(make(k), a, phi, x);
        const Spinord fd = weitzenboeck_residual(make(k, Backend::fd()), a, phi, x);
        const double scale = std::max(1.0, max_abs(weitzenboeck_terms(make(k), a, phi, x).d_squared));
        CHECK(max_abs(ad) < 1e-8 * scale);
        CHECK(max_abs(fd) < 1e-6 * scale);
      }
    // the literal normalization breaks it on hyperbolic space
    const TensorField phi = constant_field({1, 0, 0, 0});
    const Evaluator lit = make(ChartKind::ball, Backend::ad(), Normalization::literal());
    CHECK(max_abs(weitzenboeck_residual(lit, zero_field(9), phi, {0.1, 0.1, 0.1})) > 0.1);
  }

  TEST_CASE("gauge linearization") {
    const Evaluator ev = make(ChartKind::ball);
    const Point x{0.1, 0.2, -0.1};
    CHECK(max_abs_t(gauge_lin(ev, Configuration::canonical(1.0), zero_field(3), x)) == 0.0);
    const Tangent<double> g = gauge_lin(make(ChartKind::euclidean), Configuration::canonical(1.0),
                                        constant_field({1, 2, 3}), x);
    CHECK(max_abs(g.a) == 0.0);
    CHECK(g.f == 0.0);
    CHECK(max_abs(g.sigma + Vec3d{{1, 2, 3}}) == 0.0);
  }

  TEST_CASE("linearization at the canonical solution") {
    const Evaluator lit = make(ChartKind::ball, Backend::ad(), Normalization::literal());
    const Evaluator con = make(ChartKind::ball);
    TangentInput u;
    u.f = TensorField(1, [](const JetPoint& p) { return std::vector<Jet>{p[0] * p[1] + p[2]}; });
    const Point x{0.2, -0.1, 0.3};
    const Frame fr(con.chart, x, 1);
    const Vec3d df = values(grad(fr, u.f.jets(x, 1, Backend::ad())[0]));
    const double f = u.f.values(x)[0];
    const auto tl = big_L_apply(lit, Configuration::canonical(1.0), u, x);
    CHECK(max_abs(tl.a + Mat3d::identity() * (2.0 * f)) < 1e-13);
    CHECK(max_abs(tl.sigma + df) < 1e-13);
    const auto tc = big_L_apply(con, Configuration::canonical(1.0), u, x);
    CHECK(max_abs(tc.a + Mat3d::identity() * f) < 1e-13);
    CHECK(max_abs(tc.sigma + df) < 1e-13);
    CHECK(max_abs_t(big_L_apply(con, Configuration::canonical(1.0), TangentInput{}, x)) == 0.0);
  }

  TEST_CASE("linearization kills gauge directions at the canonical solution") {
    std::mt19937_64 rng(9);
    const Evaluator ev = make(ChartKind::ball, Backend::fd());
    const Configuration c = Configuration::canonical(1.0);
    for (int n = 0; n < 5; ++n) {
      const TensorField xi = poly(rng, 3);
      auto gx = [ev, c, xi](const Point& p) { return gauge_lin(ev, c, xi, p); };
      TangentInput u;
      u.a = pointwise(9, [gx](const Point& p) {
        const Mat3d a = gx(p).a;
        std::vector<double> v;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) v.push_back(a(i, j));
        return v;
      });
      u.f = pointwise(1, [gx](const Point& p) { return std::vector<double>{gx(p).f}; });
      u.sigma = pointwise(3, [gx](const Point& p) {
        const Vec3d s = gx(p).sigma;
        return std::vector<double>{s[0], s[1], s[2]};
      });
      const Point x = ev.chart.sample(rng);
      const auto l = big_L_apply(ev, c, u, x);
      CHECK(max_abs(l.a) < 1e-6);
      CHECK(std::abs(l.f) < 1e-6);
      CHECK(max_abs(l.sigma) < 1e-6);
    }
  }

  TEST_CASE("square of the linearization at (0, 1, 0)") {
    std::mt19937_64 rng(10);
    const Evaluator ev = make(ChartKind::ball);
    double derived_diag = 0, derived_off = 0, claimed_diag = 0;
    for (int n = 0; n < 5; ++n) {
      const TangentInput u = random_tangent(rng);
      const Point x = ev.chart.sample(rng);
      const auto d = big_L_squared_check(ev, u, x, DiagonalForm::derived);
      const auto c = big_L_squared_check(ev, u, x, DiagonalForm::claimed);
      derived_diag = std::max(derived_diag, d.diagonal);
      derived_off = std::max(derived_off, d.off_diagonal);
      claimed_diag = std::max(claimed_diag, c.diagonal);
    }
    CHECK(derived_diag < 1e-8);
    CHECK(derived_off < 1e-8);
    // the stated diagonal differs from what this operator produces
    CHECK(claimed_diag > 1e-3);
  }

  TEST_CASE("first block on trace-free Codazzi tensors") {
    // Hessian of the harmonic x1 x2 x3 + x1^3 - 3 x1 x2^2
    const TensorField hess(9, [](const JetPoint& p) {
      const Jet z = Jet::constant(0.0, p[0].order());
      const Jet a = 6.0 * p[0], b = -6.0 * p[1];
      return std::vector<Jet>{a, p[2] + b, p[1], p[2] + b, -1.0 * a, p[0], p[1], p[0], z};
    });
    const Evaluator ev = make(ChartKind::euclidean);
    const Point x{0.3, -0.2, 0.5};
    const auto cr = codazzi_residual(ev, hess, x);
    CHECK(max_abs(cr.star_d_lc) < 1e-8);
    CHECK(std::abs(cr.trace) < 1e-14);
    CHECK(max_abs(cr.tau) < 1e-14);
    const Frame fr(ev.chart, x, 2);
    std::vector<Jet> hv = hess.jets(x, 2, Backend::ad());
    Mat3J aj;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) aj(i, j) = hv[3 * i + j];
    const Mat3d blk = values(first_block(fr, aj, 2.0));
    CHECK(max_abs(blk - values(laplacian_lc(fr, aj))) < 1e-12);
    CHECK(std::abs(trace(blk)) < 1e-12);
    CHECK(max_abs(tau(blk)) < 1e-12);

    const auto g = codazzi_residual(make(ChartKind::ball), constant_field({1, 0, 0, 0, 1, 0, 0, 0, 1}), {0.1, 0, 0});
    CHECK(max_abs(g.star_d_lc) < 1e-12);
    CHECK(g.trace == 3.0);
    CHECK(max_abs(g.tau) == 0.0);
  }

  TEST_CASE("moment identity for the twisted codifferential") {
    std::mt19937_64 rng(11);
    CHECK(max_abs(dstar_moment_identity(make(ChartKind::euclidean), zero_field(9), constant_field({1, 2, 0, 1}),
                                        constant_field({0, 1, 1, 3}), {0, 0, 0})) < 1e-14);
    for (auto k : kMixed)
      for (int n = 0; n < 5; ++n) {
        const TensorField phi = poly(rng, 4), psi = poly(rng, 4);
        const Mat3d ca = test::random_mat(rng, 0.5);
        std::vector<double> av;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) av.push_back(ca(i, j));
        for (const TensorField& a : {zero_field(9), constant_field(av), poly(rng, 9)}) {
          const Point x = Chart(k).sample(rng);
          CHECK(max_abs(dstar_moment_identity(make(k, Backend::fd()), a, phi, psi, x)) < 1e-6);
        }
      }
  }
}
