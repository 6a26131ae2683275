#include "spsw/product.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "spsw/parallel.hpp"

namespace spsw {

BlockTensor& BlockTensor::operator+=(const BlockTensor& o) {
  b11 += o.b11;
  for (int i = 0; i < 2; ++i) {
    b12[i] += o.b12[i];
    b21[i] += o.b21[i];
    for (int j = 0; j < 2; ++j) b22[i][j] += o.b22[i][j];
  }
  return *this;
}

BlockTensor& BlockTensor::operator*=(double s) {
  b11 *= s;
  for (int i = 0; i < 2; ++i) {
    b12[i] *= s;
    b21[i] *= s;
    for (int j = 0; j < 2; ++j) b22[i][j] *= s;
  }
  return *this;
}

BlockTensor operator+(BlockTensor a, const BlockTensor& b) { return a += b; }
BlockTensor operator-(BlockTensor a, const BlockTensor& b) { return a += (-1.0) * b; }
BlockTensor operator*(double s, BlockTensor b) { return b *= s; }

BlockTensor block_decompose(const Mat3d& m) {
  BlockTensor b;
  b.b11 = m(0, 0);
  for (int i = 0; i < 2; ++i) {
    b.b12[i] = m(i + 1, 0);
    b.b21[i] = m(0, i + 1);
    for (int j = 0; j < 2; ++j) b.b22[i][j] = m(i + 1, j + 1);
  }
  return b;
}

Mat3d block_assemble(const BlockTensor& b) {
  Mat3d m;
  m(0, 0) = b.b11;
  for (int i = 0; i < 2; ++i) {
    m(i + 1, 0) = b.b12[i];
    m(0, i + 1) = b.b21[i];
    for (int j = 0; j < 2; ++j) m(i + 1, j + 1) = b.b22[i][j];
  }
  return m;
}

double max_abs(const BlockTensor& b) { return max_abs(block_assemble(b)); }

// ---- reduced configurations -----------------------------------------------------

TensorField circle_invariant(const TensorField& f) {
  return TensorField(f.components(), [f](const JetPoint& x) {
    JetPoint y = x;
    y[0] = Jet::constant(0.0, x[1].order());
    return f(y);
  });
}

Configuration ReducedConfig::lift() const {
  Configuration c;
  const auto b = beta, d = delta, l = lambda, w = omega;
  c.a = TensorField(9, [b, d](const JetPoint& x) {
    const auto bv = b(x), dv = d(x);
    const Jet zero = Jet::constant(0.0, x[1].order());
    return std::vector<Jet>{zero, zero, zero, bv[0], dv[0], dv[1], bv[1], dv[2], dv[3]};
  });
  c.f = f;
  c.sigma = TensorField(3, [l, w](const JetPoint& x) {
    const auto lv = l(x), wv = w(x);
    return std::vector<Jet>{lv[0], wv[0], wv[1]};
  });
  return c;
}

ReducedConfig ReducedConfig::random(std::mt19937_64& rng, int degree, double amplitude, const Point& center) {
  ReducedConfig rc;
  rc.beta = circle_invariant(random_polynomial_field(rng, 2, degree, amplitude, center));
  rc.delta = circle_invariant(random_polynomial_field(rng, 4, degree, amplitude, center));
  rc.f = circle_invariant(random_polynomial_field(rng, 1, degree, amplitude, center));
  rc.lambda = circle_invariant(random_polynomial_field(rng, 1, degree, amplitude, center));
  rc.omega = circle_invariant(random_polynomial_field(rng, 2, degree, amplitude, center));
  return rc;
}

namespace {

void require_product(const Chart& c) {
  if (!c.product()) throw std::invalid_argument("product reduction needs a product chart, got " + std::string(c.name()));
}

// Values and first Sigma frame derivatives of the reduced fields.
struct ReducedLocal {
  Vec2d beta{}, omega{};
  Mat2d delta{};
  double f = 0.0, lambda = 0.0;
  // nabla_i beta_j, nabla_l delta_ij (Sigma indices 0, 1 for e_1, e_2)
  Mat2d nbeta{};
  std::array<Mat2d, 2> ndelta{};
  double gauss = 0.0;  // Gauss curvature of Sigma
};

double gauss_curvature(const Chart& chart, const Point& x) {
  const auto h = chart.scale(seed(x, 2));
  const Jet& h1 = h[1];
  const Jet& h2 = h[2];
  const Jet a = (h2.derivative(1) / h1).derivative(1);
  const Jet b = (h1.derivative(2) / h2).derivative(2);
  return -(a.value() + b.value()) / (h1.value() * h2.value());
}

ReducedLocal load_reduced(const Evaluator& ev, const ReducedConfig& rc, const Point& x) {
  const Frame fr(ev.chart, x, 1);
  const auto bj = rc.beta.jets(x, 1, ev.backend);
  const auto dj = rc.delta.jets(x, 1, ev.backend);
  const auto wj = rc.omega.jets(x, 1, ev.backend);
  ReducedLocal r;
  r.f = rc.f.jets(x, 0, ev.backend)[0].value();
  r.lambda = rc.lambda.jets(x, 0, ev.backend)[0].value();
  for (int i = 0; i < 2; ++i) {
    r.beta[i] = bj[i].value();
    r.omega[i] = wj[i].value();
    for (int j = 0; j < 2; ++j) r.delta[i][j] = dj[2 * i + j].value();
  }
  auto G = [&](int i, int j, int k) { return fr.gamma(i + 1, j + 1, k + 1).value(); };
  auto e = [&](int i, const Jet& u) { return fr.e(i + 1, u).value(); };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double v = e(i, bj[j]);
      for (int k = 0; k < 2; ++k) v -= G(i, j, k) * r.beta[k];
      r.nbeta[i][j] = v;
    }
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double v = e(l, dj[2 * i + j]);
        for (int k = 0; k < 2; ++k) v -= G(l, i, k) * r.delta[k][j] + G(l, j, k) * r.delta[i][k];
        r.ndelta[l][i][j] = v;
      }
  r.gauss = gauss_curvature(ev.chart, x);
  return r;
}

Vec2d star_row(const Mat2d& d, int i) { return star_sigma({d[i][0], d[i][1]}); }

// *d beta, *_Sigma d_LC delta, <delta ^ delta> and 2 *_Sigma(beta ^ *_Sigma delta).
double star_d_beta(const ReducedLocal& r) { return r.nbeta[0][1] - r.nbeta[1][0]; }
Vec2d star_d_lc_delta(const ReducedLocal& r) {
  return {r.ndelta[0][1][0] - r.ndelta[1][0][0], r.ndelta[0][1][1] - r.ndelta[1][0][1]};
}
double delta_wedge_delta(const ReducedLocal& r) {
  return 2.0 * (r.delta[0][0] * r.delta[1][1] - r.delta[0][1] * r.delta[1][0]);
}
Vec2d beta_wedge_star_delta(const ReducedLocal& r) {
  const Vec2d s1 = star_row(r.delta, 0), s2 = star_row(r.delta, 1);
  return {2.0 * (r.beta[0] * s2[0] - r.beta[1] * s1[0]), 2.0 * (r.beta[0] * s2[1] - r.beta[1] * s1[1])};
}

constexpr Mat2d kVol{{{0.0, 1.0}, {-1.0, 0.0}}};

}  // namespace

std::string_view term_name(int k) {
  static constexpr std::array<std::string_view, kSixTerms> names{
      "(f^2-|sigma|^2)g", "-2*(f sigma)", "sigma(x)sigma", "R_g", "*d_LC a", "1/2*[a^a]"};
  return names.at(k);
}

std::string_view term_block_display(int k) {
  static constexpr std::array<std::string_view, kSixTerms> displays{
      "[[f^2-lambda^2-|omega|^2, 0], [0, (f^2-lambda^2-|omega|^2) g_Sigma]]",
      "[[0, -2f *_Sigma omega], [2f *_Sigma omega, -2f lambda vol_Sigma]]",
      "[[lambda^2, lambda omega], [lambda omega, omega(x)omega]]",
      "[[R_{g_Sigma}, 0], [0, 0]]",
      "[[*_Sigma d beta, 0], [*_Sigma d_LC delta, 0]]",
      "[[<delta ^ delta>, 0], [2 *_Sigma(beta ^ *_Sigma delta), 0]]"};
  return displays.at(k);
}

SixTerms reduced_terms(const Evaluator& ev, const ReducedConfig& rc, const Point& x) {
  require_product(ev.chart);
  const ReducedLocal r = load_reduced(ev, rc, x);
  const double s = r.f * r.f - r.lambda * r.lambda - r.omega[0] * r.omega[0] - r.omega[1] * r.omega[1];
  const Vec2d sw = star_sigma(r.omega);
  SixTerms t;

  t[0].b11 = s;
  t[0].b22 = {{{s, 0.0}, {0.0, s}}};

  for (int i = 0; i < 2; ++i) {
    t[1].b12[i] = -2.0 * r.f * sw[i];
    t[1].b21[i] = 2.0 * r.f * sw[i];
    for (int j = 0; j < 2; ++j) t[1].b22[i][j] = -2.0 * r.f * r.lambda * kVol[i][j];
  }

  t[2].b11 = r.lambda * r.lambda;
  for (int i = 0; i < 2; ++i) {
    t[2].b12[i] = t[2].b21[i] = r.lambda * r.omega[i];
    for (int j = 0; j < 2; ++j) t[2].b22[i][j] = r.omega[i] * r.omega[j];
  }

  // Ric - 1/2 scal g on S^1 x Sigma is diag(-K, 0, 0).
  t[3].b11 = -ev.norm.riemann_scale * r.gauss;

  t[4].b11 = star_d_beta(r);
  t[4].b21 = star_d_lc_delta(r);

  t[5].b11 = delta_wedge_delta(r);
  t[5].b21 = beta_wedge_star_delta(r);
  return t;
}

std::array<Mat3d, kSixTerms> full_terms(const Evaluator& ev, const ReducedConfig& rc, const Point& x) {
  require_product(ev.chart);
  const Frame fr(ev.chart, x, 1);
  const LocalFields c = load(rc.lift(), x, 1, ev.backend);
  const double f = c.f.value();
  const Vec3d sigma = values(c.sigma);
  std::array<Mat3d, kSixTerms> t;
  t[0] = Mat3d::identity() * (f * f - norm2(sigma));
  t[1] = star_vec(sigma) * (-2.0 * f);
  t[2] = outer(sigma, sigma);
  t[3] = riemann_as_matrix(ev.chart, x, ev.norm.riemann_scale);
  t[4] = values(star_d_lc(fr, c.a));
  const Mat3d a = values(c.a);
  t[5] = star_bracket_wedge(a, a) * 0.5;
  return t;
}

BlockTensor ReducedResidual::as_block() const {
  BlockTensor b;
  b.b11 = first;
  b.b21 = second;
  b.b12 = third;
  b.b22 = fourth;
  return b;
}

ReducedResidual reduced_residual(const Evaluator& ev, const ReducedConfig& rc, const Point& x) {
  require_product(ev.chart);
  const ReducedLocal r = load_reduced(ev, rc, x);
  const double m = ev.norm.mu_scale;
  const double s = r.f * r.f - r.lambda * r.lambda - r.omega[0] * r.omega[0] - r.omega[1] * r.omega[1];
  const Vec2d sw = star_sigma(r.omega);
  const Vec2d dd = star_d_lc_delta(r), bd = beta_wedge_star_delta(r);

  ReducedResidual res;
  res.first = -ev.norm.riemann_scale * r.gauss + star_d_beta(r) + delta_wedge_delta(r) -
              (m * s + r.lambda * r.lambda);
  for (int i = 0; i < 2; ++i) {
    res.second[i] = dd[i] + bd[i] - (2.0 * m * r.f * sw[i] + r.lambda * r.omega[i]);
    res.third[i] = 2.0 * m * r.f * sw[i] - r.lambda * r.omega[i];
  }
  const auto last = last_block({r.f, r.lambda, r.omega[0], r.omega[1]}, m);
  res.fourth = {{{last[0], last[1]}, {last[2], last[3]}}};
  return res;
}

// ---- the last block ---------------------------------------------------------------

std::array<double, 4> last_block(const Unknowns& u, double m) {
  const auto [f, l, w1, w2] = u;
  const double s = f * f - l * l - w1 * w1 - w2 * w2;
  return {-(m * s + w1 * w1), -(-2.0 * m * f * l + w1 * w2), -(2.0 * m * f * l + w1 * w2), -(m * s + w2 * w2)};
}

LastBlockSplit split_last_block(const Unknowns& u, double m) {
  const auto [f, l, w1, w2] = u;
  const double w = w1 * w1 + w2 * w2;
  return {w1 * w1 - 0.5 * w, w1 * w2, m * (f * f - l * l - w) + 0.5 * w, f * l};
}

namespace {

Eigen::Matrix4d last_block_jacobian(const Unknowns& u, double m) {
  const auto [f, l, w1, w2] = u;
  Eigen::Matrix4d j;
  // d/d(f, lambda, omega_1, omega_2) of the four entries.
  j << -2 * m * f, 2 * m * l, 2 * m * w1 - 2 * w1, 2 * m * w2,  //
      2 * m * l, 2 * m * f, -w2, -w1,                            //
      -2 * m * l, -2 * m * f, -w2, -w1,                          //
      -2 * m * f, 2 * m * l, 2 * m * w1, 2 * m * w2 - 2 * w2;
  return j;
}

double sup(const std::array<double, 4>& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

struct NewtonResult {
  Unknowns x;
  double residual;
  bool converged;
};

// Levenberg-Marquardt with a tiny relative damping; on this homogeneous
// quadratic the undamped step halves the distance to the root.
NewtonResult refine(Unknowns x, double m, double tolerance) {
  const double target = tolerance * tolerance;
  for (int it = 0; it < 400; ++it) {
    const auto r = last_block(x, m);
    const double res = sup(r);
    if (res <= 1e-3 * target) return {x, res, true};
    const Eigen::Matrix4d j = last_block_jacobian(x, m);
    const Eigen::Vector4d rv(r[0], r[1], r[2], r[3]);
    Eigen::Matrix4d normal = j.transpose() * j;
    const double damping = 1e-12 * std::max(normal.trace(), 1e-300);
    normal.diagonal().array() += damping;
    const Eigen::Vector4d step = normal.ldlt().solve(-j.transpose() * rv);
    if (!step.allFinite()) break;
    for (int i = 0; i < 4; ++i) x[i] += step[i];
    if (step.cwiseAbs().maxCoeff() < 1e-3 * tolerance * 1e-6) break;
  }
  const double res = sup(last_block(x, m));
  return {x, res, res <= target};
}

}  // namespace

LastBlockReport last_block_solve(int samples, double tolerance, double m, int threads, double box) {
  if (samples < 2) throw std::invalid_argument("last_block_solve needs at least 2 samples per axis");
  if (!(tolerance > 0.0)) throw std::invalid_argument("last_block_solve needs a positive tolerance");
  const std::size_t n = static_cast<std::size_t>(samples);
  const std::size_t total = n * n * n * n;
  std::vector<NewtonResult> results(total);
  auto coord = [&](std::size_t k) { return -box + 2.0 * box * static_cast<double>(k) / static_cast<double>(n - 1); };
  parallel_for(total, threads, [&](std::size_t idx) {
    std::size_t r = idx;
    Unknowns x;
    for (int a = 3; a >= 0; --a) {
      x[a] = coord(r % n);
      r /= n;
    }
    results[idx] = refine(x, m, tolerance);
  });

  LastBlockReport rep;
  rep.samples_per_axis = samples;
  rep.box = box;
  rep.tolerance = tolerance;
  rep.starts = total;
  for (const auto& r : results) {
    if (!r.converged) continue;
    ++rep.converged;
    rep.max_root_residual = std::max(rep.max_root_residual, r.residual);
    const bool known = std::any_of(rep.solutions.begin(), rep.solutions.end(), [&](const Unknowns& s) {
      double d = 0.0;
      for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(s[i] - r.x[i]));
      return d <= tolerance;
    });
    if (!known) rep.solutions.push_back(r.x);
  }
  rep.unique_origin = rep.solutions.size() == 1 && sup(rep.solutions.front()) <= tolerance;
  return rep;
}

nlohmann::json to_json(const LastBlockReport& r) {
  nlohmann::json sols = nlohmann::json::array();
  for (const auto& s : r.solutions) sols.push_back({{"f", s[0]}, {"lambda", s[1]}, {"omega", {s[2], s[3]}}});
  return {{"samples_per_axis", r.samples_per_axis},
          {"box", r.box},
          {"tolerance", r.tolerance},
          {"starts", r.starts},
          {"converged", r.converged},
          {"solutions", sols},
          {"max_root_residual", r.max_root_residual},
          {"unique_origin", r.unique_origin}};
}

std::string_view circle_invariance_assumption() {
  return "Conditional: if (a, f, sigma) is an irreducible solution, it is gauge equivalent to a solution "
         "which is circle invariant (quoted from the literature, not re-derived). The reduction below "
         "applies to such circle-invariant solutions.";
}

}  // namespace spsw
