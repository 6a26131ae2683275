#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <spsw/product.hpp>

using namespace spsw;

namespace {

Evaluator product_ev(ChartKind k, Backend b = Backend::ad(), Normalization n = Normalization::consistent()) {
  return {Chart(k), b, n};
}

ReducedConfig constant_reduced(double f, double lambda, Vec2d omega) {
  ReducedConfig rc;
  rc.f = constant_field({f});
  rc.lambda = constant_field({lambda});
  rc.omega = constant_field({omega[0], omega[1]});
  return rc;
}

double rel_error(const Mat3d& reduced, const Mat3d& full) {
  return max_abs(reduced - full) / std::max(1.0, max_abs(full));
}

}  // namespace

TEST_SUITE("product") {
  TEST_CASE("block decomposition round trip") {
    std::mt19937_64 rng(1);
    for (int n = 0; n < 50; ++n) {
      Mat3d m;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = uniform(rng, -1, 1);
      CHECK(max_abs(block_assemble(block_decompose(m)) - m) == 0.0);
    }
    // dt (x) e^1 has row t, column Sigma: the B21 slot
    Mat3d e;
    e(0, 1) = 1.0;
    const BlockTensor b = block_decompose(e);
    CHECK(b.b21[0] == 1.0);
    CHECK(b.b12[0] == 0.0);
    CHECK(b.b11 == 0.0);
    const Vec2d s = star_sigma({1.0, 0.0});
    CHECK(s[0] == 0.0);
    CHECK(s[1] == 1.0);
  }

  TEST_CASE("non-product charts are rejected") {
    const Evaluator ev = product_ev(ChartKind::ball);
    CHECK_THROWS_AS(reduced_terms(ev, ReducedConfig{}, Point{0.0, 0.1, 0.1}), std::invalid_argument);
  }

  TEST_CASE("the zero configuration leaves only the curvature of Sigma") {
    for (auto norm : {Normalization::consistent(), Normalization::literal()}) {
      const Evaluator ev = product_ev(ChartKind::s1xh2, Backend::ad(), norm);
      std::mt19937_64 rng(2);
      for (int n = 0; n < 10; ++n) {
        const Point x = ev.chart.sample(rng);
        const SixTerms t = reduced_terms(ev, ReducedConfig{}, x);
        CHECK(t[3].b11 == doctest::Approx(norm.riemann_scale).epsilon(1e-12));
        for (int k : {0, 1, 2, 4, 5}) CHECK(max_abs(t[k]) == 0.0);
        const ReducedResidual r = reduced_residual(ev, ReducedConfig{}, x);
        CHECK(r.first == doctest::Approx(norm.riemann_scale).epsilon(1e-12));
      }
    }
    const Evaluator flat = product_ev(ChartKind::s1xt2);
    std::mt19937_64 rng(3);
    const Point x = flat.chart.sample(rng);
    CHECK(max_abs(reduced_residual(flat, ReducedConfig{}, x).as_block()) == 0.0);
  }

  TEST_CASE("omega = e^1 example") {
    const Evaluator ev = product_ev(ChartKind::s1xt2);
    const Point x{0.3, 0.4, 0.5};
    const SixTerms t = reduced_terms(ev, constant_reduced(0.0, 0.0, {1.0, 0.0}), x);
    CHECK(t[0].b11 == -1.0);
    CHECK(t[0].b22[0][0] == -1.0);
    CHECK(t[0].b22[1][1] == -1.0);
    CHECK(t[0].b22[0][1] == 0.0);
    CHECK(t[2].b22[0][0] == 1.0);
    CHECK(t[2].b22[0][1] == 0.0);
    CHECK(t[2].b22[1][1] == 0.0);
    CHECK(max_abs(t[1]) == 0.0);
  }

  TEST_CASE("reduced terms agree with the three-dimensional terms") {
    for (ChartKind k : {ChartKind::s1xh2, ChartKind::s1xt2}) {
      for (auto [backend, tol] : {std::pair{Backend::ad(), 1e-10}, std::pair{Backend::fd(1e-3), 1e-6}}) {
        const Evaluator ev = product_ev(k, backend);
        std::mt19937_64 rng(4);
        for (int n = 0; n < 20; ++n) {
          const Point x = ev.chart.sample(rng);
          const ReducedConfig rc = ReducedConfig::random(rng, 2, 1.0, x);
          const SixTerms red = reduced_terms(ev, rc, x);
          const auto full = full_terms(ev, rc, x);
          for (int t = 0; t < kSixTerms; ++t) CHECK(rel_error(block_assemble(red[t]), full[t]) <= tol);
        }
      }
    }
  }

  TEST_CASE("reduced residual is the block form of the full residual") {
    for (auto norm : {Normalization::consistent(), Normalization::literal()}) {
      const Evaluator ev = product_ev(ChartKind::s1xh2, Backend::ad(), norm);
      std::mt19937_64 rng(5);
      for (int n = 0; n < 20; ++n) {
        const Point x = ev.chart.sample(rng);
        const ReducedConfig rc = ReducedConfig::random(rng, 2, 1.0, x);
        const Mat3d full = sw_residual(ev, rc.lift(), x).curvature;
        CHECK(rel_error(block_assemble(reduced_residual(ev, rc, x).as_block()), full) <= 1e-10);

        const SixTerms t = reduced_terms(ev, rc, x);
        const BlockTensor sum = t[3] + t[4] + t[5] - (norm.mu_scale * (t[0] + t[1]) + t[2]);
        CHECK(rel_error(block_assemble(sum), full) <= 1e-10);
      }
    }
  }

  TEST_CASE("lifted fields are circle invariant") {
    std::mt19937_64 rng(6);
    const Point c{0.0, 0.2, 0.3};
    const ReducedConfig rc = ReducedConfig::random(rng, 2, 1.0, c);
    const Configuration lifted = rc.lift();
    const auto a0 = lifted.a.values(Point{0.1, 0.2, 0.3}), a1 = lifted.a.values(Point{2.5, 0.2, 0.3});
    for (int q = 0; q < 9; ++q) CHECK(a0[q] == a1[q]);
    for (int q = 0; q < 3; ++q) CHECK(a0[q] == 0.0);
  }

  TEST_CASE("last block examples and case split") {
    const double m = 0.5;
    CHECK(last_block({0, 0, 0, 0}, m) == std::array<double, 4>{0, 0, 0, 0});
    // omega = e^1: m|omega|^2 g - omega (x) omega
    const auto e1 = last_block({0, 0, 1, 0}, m);
    CHECK(e1[0] == doctest::Approx(-0.5));
    CHECK(e1[3] == doctest::Approx(0.5));
    CHECK(e1[1] == 0.0);
    // f = lambda = 1: only the skew slots survive
    const auto fl = last_block({1, 1, 0, 0}, m);
    CHECK(fl[0] == 0.0);
    CHECK(fl[1] == doctest::Approx(1.0));
    CHECK(fl[2] == doctest::Approx(-1.0));

    std::mt19937_64 rng(7);
    for (int n = 0; n < 1000; ++n) {
      const Unknowns u{uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2)};
      const auto b = last_block(u, m);
      const auto s = split_last_block(u, m);
      // the four entries are linear combinations of the split
      CHECK(b[0] - b[3] == doctest::Approx(-2.0 * s.tracefree_diag).epsilon(1e-12));
      CHECK(b[1] + b[2] == doctest::Approx(-2.0 * s.tracefree_off).epsilon(1e-12));
      CHECK(b[0] + b[3] == doctest::Approx(-2.0 * s.trace).epsilon(1e-12));
      CHECK(b[2] - b[1] == doctest::Approx(-4.0 * m * s.skew).epsilon(1e-12));
      // omega_1 omega_2 = 0 and omega_1^2 = |omega|^2 / 2 force omega = 0
      const double w = u[2] * u[2] + u[3] * u[3];
      if (std::abs(s.tracefree_off) < 1e-12 && std::abs(s.tracefree_diag) < 1e-12) CHECK(w < 1e-6);
    }
  }

  TEST_CASE("vanishing last block forces the third equation") {
    for (auto norm : {Normalization::consistent(), Normalization::literal()}) {
      const Evaluator ev = product_ev(ChartKind::s1xh2, Backend::ad(), norm);
      const Point x{0.0, 0.1, -0.2};
      const ReducedResidual r = reduced_residual(ev, constant_reduced(0.0, 0.0, {0.0, 0.0}), x);
      CHECK(r.third == Vec2d{0.0, 0.0});
      CHECK(r.fourth == Mat2d{});
      const ReducedResidual q = reduced_residual(ev, constant_reduced(0.7, 0.0, {0.3, -0.4}), x);
      CHECK(max_abs(block_assemble(BlockTensor{0.0, q.third, {}, {}})) > 0.1);
      CHECK(std::abs(q.fourth[0][0]) + std::abs(q.fourth[1][1]) > 0.1);
    }
  }

  TEST_CASE("last block scan finds only the origin") {
    for (auto norm : {Normalization::consistent(), Normalization::literal()}) {
      const LastBlockReport r = last_block_solve(6, 1e-6, norm.mu_scale);
      CHECK(r.starts == 6u * 6u * 6u * 6u);
      CHECK(r.converged == r.starts);
      CHECK(r.unique_origin);
      REQUIRE(r.solutions.size() == 1);
      for (double v : r.solutions[0]) CHECK(std::abs(v) <= 1e-6);
      CHECK(r.max_root_residual <= 1e-12);
      const auto j = to_json(r);
      CHECK(j.at("unique_origin").get<bool>());
    }
    CHECK(std::string(circle_invariance_assumption()).find("Conditional") == 0);
  }

  TEST_CASE("term labels") {
    for (int k = 0; k < kSixTerms; ++k) {
      CHECK_FALSE(term_name(k).empty());
      CHECK_FALSE(term_block_display(k).empty());
    }
    CHECK_THROWS(term_name(kSixTerms));
  }
}
