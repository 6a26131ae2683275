#include "spsw/chart.hpp"

#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace spsw {

std::string_view to_string(ChartKind k) {
  switch (k) {
    case ChartKind::euclidean: return "euclidean";
    case ChartKind::ball: return "ball";
    case ChartKind::half_space: return "half-space";
    case ChartKind::s1xh2: return "s1xh2";
    case ChartKind::s1xt2: return "s1xt2";
    case ChartKind::t3: return "t3";
  }
  return "?";
}

bool parse_chart(std::string_view s, ChartKind& out) {
  for (auto k : {ChartKind::euclidean, ChartKind::ball, ChartKind::half_space, ChartKind::s1xh2, ChartKind::s1xt2,
                 ChartKind::t3}) {
    if (s == to_string(k)) {
      out = k;
      return true;
    }
  }
  static constexpr std::pair<std::string_view, ChartKind> aliases[] = {
      {"poincare-ball", ChartKind::ball},
      {"upper-half-space", ChartKind::half_space},
      {"product-circle-hyperbolic-disk", ChartKind::s1xh2},
      {"product-circle-flat-2torus", ChartKind::s1xt2},
      {"flat-3torus", ChartKind::t3}};
  for (const auto& [name, k] : aliases) {
    if (s == name) {
      out = k;
      return true;
    }
  }
  return false;
}

std::array<Jet, 3> Chart::scale(const JetPoint& x) const {
  switch (kind_) {
    case ChartKind::ball: {
      const Jet h = 2.0 / (1.0 - (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
      return {h, h, h};
    }
    case ChartKind::half_space: {
      const Jet h = 1.0 / x[2];
      return {h, h, h};
    }
    case ChartKind::s1xh2: {
      const Jet h = 2.0 / (1.0 - (x[1] * x[1] + x[2] * x[2]));
      return {Jet(1.0), h, h};
    }
    default: return {Jet(1.0), Jet(1.0), Jet(1.0)};
  }
}

Mat3d Chart::metric(const Point& x) const {
  const auto h = scale({Jet::constant(x[0], 0), Jet::constant(x[1], 0), Jet::constant(x[2], 0)});
  Mat3d g;
  for (int i = 0; i < 3; ++i) g(i, i) = h[i].value() * h[i].value();
  return g;
}

TensorField Chart::metric_field() const {
  const Chart self = *this;
  return TensorField(6, [self](const JetPoint& x) {
    const auto h = self.scale(x);
    return std::vector<Jet>{h[0] * h[0], Jet(0.0), Jet(0.0), h[1] * h[1], Jet(0.0), h[2] * h[2]};
  });
}

bool Chart::admissible(const Point& x) const {
  switch (kind_) {
    case ChartKind::ball: return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] < 1.0;
    case ChartKind::half_space: return x[2] > 0.0;
    case ChartKind::s1xh2: return x[1] * x[1] + x[2] * x[2] < 1.0;
    default: return true;
  }
}

void Chart::require_admissible(const Point& x) const {
  if (!admissible(x))
    throw std::domain_error("point (" + std::to_string(x[0]) + ", " + std::to_string(x[1]) + ", " +
                            std::to_string(x[2]) + ") outside the " + std::string(name()) + " chart");
}

Point Chart::sample(std::mt19937_64& rng) const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double r = 1.0 - kMargin;
  switch (kind_) {
    case ChartKind::euclidean: return {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
    case ChartKind::ball:
      for (;;) {
        Point p{uniform(rng, -r, r), uniform(rng, -r, r), uniform(rng, -r, r)};
        if (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] < r * r) return p;
      }
    case ChartKind::half_space: return {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, kMargin, 2.0)};
    case ChartKind::s1xh2:
      for (;;) {
        Point p{uniform(rng, 0, two_pi), uniform(rng, -r, r), uniform(rng, -r, r)};
        if (p[1] * p[1] + p[2] * p[2] < r * r) return p;
      }
    case ChartKind::s1xt2:
    case ChartKind::t3: return {uniform(rng, 0, two_pi), uniform(rng, 0, two_pi), uniform(rng, 0, two_pi)};
  }
  return {0, 0, 0};
}

Frame::Frame(const Chart& chart, const Point& x, int order) : order_(order), x_(x) {
  chart.require_admissible(x);
  const auto h = chart.scale(seed(x, order + 1));
  std::array<Jet, 3> gdiag;
  for (int i = 0; i < 3; ++i) {
    inv_h_[i] = 1.0 / h[i];
    gdiag[i] = h[i] * h[i];
  }
  // Coordinate Christoffels of a diagonal metric.
  std::array<std::array<std::array<Jet, 3>, 3>, 3> cg;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Jet s = Jet::constant(0.0, order);
        if (j == k) s += gdiag[k].derivative(i);
        if (i == k) s += gdiag[k].derivative(j);
        if (i == j) s -= gdiag[i].derivative(k);
        cg[i][j][k] = s * (0.5 / gdiag[k]);
        coord_gamma_[i][j][k] = cg[i][j][k].value();
      }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Jet s = cg[i][j][k] * h[k] * inv_h_[j];
        if (j == k) s -= h[j].derivative(i) * inv_h_[j];
        g_[i][j][k] = s * inv_h_[i];
      }
}

Vec3J grad(const Frame& fr, const Jet& f) { return {{fr.e(0, f), fr.e(1, f), fr.e(2, f)}}; }

Mat3J lc_derivative(const Frame& fr, const Vec3J& s) {
  Mat3J d;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Jet v = fr.e(i, s[j]);
      for (int k = 0; k < 3; ++k) v -= fr.gamma(i, j, k) * s[k];
      d(i, j) = v;
    }
  return d;
}

Mat3Grad lc_derivative(const Frame& fr, const Mat3J& a) {
  Mat3Grad d;
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Jet v = fr.e(l, a(i, j));
        for (int k = 0; k < 3; ++k) {
          v -= fr.gamma(l, i, k) * a(k, j);
          v -= fr.gamma(l, j, k) * a(i, k);
        }
        d[l](i, j) = v;
      }
  return d;
}

Jet codifferential(const Frame& fr, const Vec3J& s) {
  const Mat3J d = lc_derivative(fr, s);
  return -trace(d);
}

Vec3J star_d(const Frame& fr, const Vec3J& s) {
  const Mat3J d = lc_derivative(fr, s);
  return tau(d);
}

Mat3J star_d_lc(const Frame& fr, const Mat3J& a) {
  const Mat3Grad d = lc_derivative(fr, a);
  Mat3J r;
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    for (int m = 0; m < 3; ++m) r(k, m) = d[i](j, m) - d[j](i, m);
  }
  return r;
}

Vec3J d_lc_star(const Frame& fr, const Mat3J& a) {
  const Mat3Grad d = lc_derivative(fr, a);
  Vec3J r;
  for (int m = 0; m < 3; ++m) r[m] = -(d[0](0, m) + d[1](1, m) + d[2](2, m));
  return r;
}

Jet laplacian(const Frame& fr, const Jet& f) { return codifferential(fr, grad(fr, f)); }

Vec3J laplacian(const Frame& fr, const Vec3J& s) {
  return grad(fr, codifferential(fr, s)) + star_d(fr, star_d(fr, s));
}

Mat3J laplacian_lc(const Frame& fr, const Mat3J& a) {
  return lc_derivative(fr, d_lc_star(fr, a)) + star_d_lc(fr, star_d_lc(fr, a));
}

Vec3J laplacian_lc(const Frame& fr, const Vec3J& xi) { return d_lc_star(fr, lc_derivative(fr, xi)); }

namespace {

// Ricci tensor and scalar curvature in the orthonormal frame, as jets of
// order fr.order() - 1.
std::pair<Mat3J, Jet> ricci_jets(const Frame& fr) {
  Mat3J ric;
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c) {
      Jet s = Jet::constant(0.0, fr.order() - 1);
      for (int a = 0; a < 3; ++a) {
        const int d = a;
        s += fr.e(a, fr.gamma(b, c, d)) - fr.e(b, fr.gamma(a, c, d));
        for (int m = 0; m < 3; ++m) {
          s += fr.gamma(b, c, m) * fr.gamma(a, m, d) - fr.gamma(a, c, m) * fr.gamma(b, m, d);
          s -= (fr.gamma(a, b, m) - fr.gamma(b, a, m)) * fr.gamma(m, c, d);
        }
      }
      ric(b, c) = s;
    }
  return {ric, trace(ric)};
}

}  // namespace

Curvature curvature(const Chart& chart, const Point& x) {
  const Frame fr(chart, x, 1);
  const auto [ric, scal] = ricci_jets(fr);
  Curvature c;
  c.ricci = values(ric);
  c.scalar = scal.value();
  c.einstein = c.ricci - Mat3d::identity() * (0.5 * c.scalar);
  return c;
}

Mat3d riemann_as_matrix(const Chart& chart, const Point& x, double scale) {
  return curvature(chart, x).einstein * scale;
}

double scalar_curvature(const Chart& chart, const Point& x) { return curvature(chart, x).scalar; }

Mat3J riemann_as_matrix_jet(const Chart& chart, const Point& x, double scale, int order) {
  const Frame fr(chart, x, order + 1);
  const auto [ric, scal] = ricci_jets(fr);
  return (ric - Mat3J::identity() * (scal * 0.5)) * scale;
}

Jet scalar_curvature_jet(const Chart& chart, const Point& x, int order) {
  const Frame fr(chart, x, order + 1);
  return ricci_jets(fr).second;
}

TrTauS tr_tau_S(const Mat3d& a) { return {trace(a), tau(a), sym2(a)}; }

// ---- general-metric path ---------------------------------------------------------

namespace {

using Jet3 = std::array<std::array<std::array<Jet, 3>, 3>, 3>;

Mat3J inverse(const Mat3J& g, Jet& det) {
  Mat3J cof;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      cof(i, j) = g(i1, j1) * g(i2, j2) - g(i1, j2) * g(i2, j1);
    }
  det = g(0, 0) * cof(0, 0) + g(0, 1) * cof(0, 1) + g(0, 2) * cof(0, 2);
  const Jet inv_det = 1.0 / det;
  return cof.transpose() * inv_det;
}

}  // namespace

CottonData cotton(const TensorField& metric, const Point& x, const Backend& backend) {
  const auto c = metric.jets(x, 3, backend);
  const int idx[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  Mat3J g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = c[idx[i][j]];
  Jet det;
  const Mat3J gi = inverse(g, det);

  // Gamma^k_ij
  Jet3 gam;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Jet s(0.0);
        for (int l = 0; l < 3; ++l)
          s += gi(k, l) * (g(j, l).derivative(i) + g(i, l).derivative(j) - g(i, j).derivative(l));
        gam[i][j][k] = s * 0.5;
      }

  // Ric_sn = R^r_{s r n}, R^r_{s m n} = d_m G^r_ns - d_n G^r_ms + G^r_ml G^l_ns - G^r_nl G^l_ms.
  Mat3J ric;
  for (int s = 0; s < 3; ++s)
    for (int n = 0; n < 3; ++n) {
      Jet v(0.0);
      for (int r = 0; r < 3; ++r) {
        v += gam[n][s][r].derivative(r) - gam[r][s][r].derivative(n);
        for (int l = 0; l < 3; ++l) v += gam[r][l][r] * gam[n][s][l] - gam[n][l][r] * gam[r][s][l];
      }
      ric(s, n) = v;
    }
  const Jet scal = frob_inner(gi, ric);
  const Mat3J p = ric - g * (scal * 0.25);

  // nabla_k P_ij
  Jet3 dp;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Jet v = p(i, j).derivative(k);
        for (int l = 0; l < 3; ++l) v -= gam[k][i][l] * p(l, j) + gam[k][j][l] * p(i, l);
        dp[k][i][j] = v;
      }

  const double vol = std::sqrt(det.value());
  CottonData out;
  out.metric = values(g);
  out.schouten = values(p);
  for (int m = 0; m < 3; ++m)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k)
          for (int i = 0; i < 3; ++i) {
            const int e = eps(l, k, i);
            if (e != 0) s += e * g(m, l).value() * dp[k][i][j].value();
          }
      out.cotton(m, j) = s / vol;
    }
  return out;
}

CottonData cotton(const Chart& chart, const Point& x) {
  chart.require_admissible(x);
  return cotton(chart.metric_field(), x, Backend::ad());
}

Mat3d schouten(const Chart& chart, const Point& x) { return cotton(chart, x).schouten; }

double metric_trace(const Mat3d& metric, const Mat3d& c) {
  Mat3d gi;
  const double det = metric(0, 0) * (metric(1, 1) * metric(2, 2) - metric(1, 2) * metric(2, 1)) -
                     metric(0, 1) * (metric(1, 0) * metric(2, 2) - metric(1, 2) * metric(2, 0)) +
                     metric(0, 2) * (metric(1, 0) * metric(2, 1) - metric(1, 1) * metric(2, 0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      gi(j, i) = (metric(i1, j1) * metric(i2, j2) - metric(i1, j2) * metric(i2, j1)) / det;
    }
  return frob_inner(gi, c);
}

double skew_norm(const Mat3d& c) { return fro_norm((c - c.transpose()) * 0.5); }

}  // namespace spsw
