#include "spsw/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "spsw/product.hpp"
#include "spsw/swop.hpp"

namespace spsw {

namespace {

constexpr std::array<std::pair<Suite, std::string_view>, 6> kSuiteNames{{
    {Suite::algebra, "verify-algebra"},
    {Suite::hyperbolic, "verify-hyperbolic"},
    {Suite::weitzenboeck, "verify-weitzenboeck"},
    {Suite::product, "verify-product"},
    {Suite::torus, "solve-torus"},
    {Suite::cotton, "verify-cotton"},
}};

constexpr std::array<std::pair<StartPreset, std::string_view>, 3> kStartNames{{
    {StartPreset::zero, "zero"},
    {StartPreset::phi_one, "phi-one"},
    {StartPreset::random, "random"},
}};

Vec3d random_vec(std::mt19937_64& rng) { return {{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)}}; }
Spinord random_spinor(std::mt19937_64& rng) { return {uniform(rng, -1, 1), random_vec(rng)}; }

std::size_t samples(const RunConfig& cfg) { return cfg.samples.value_or(default_samples(cfg.suite)); }

// The charts a suite runs on: the configured one if it is allowed, else all defaults.
std::vector<ChartKind> charts_for(const RunConfig& cfg, std::initializer_list<ChartKind> allowed,
                                  std::initializer_list<ChartKind> defaults) {
  if (!cfg.chart) return defaults;
  if (std::find(allowed.begin(), allowed.end(), *cfg.chart) == allowed.end())
    throw ConfigError(std::string(to_string(cfg.suite)) + " does not run on chart " + std::string(to_string(*cfg.chart)));
  return {*cfg.chart};
}

std::vector<Backend> backends_for(const RunConfig& cfg, std::initializer_list<BackendKind> defaults) {
  std::vector<Backend> out;
  if (cfg.backend) {
    out.push_back({*cfg.backend, cfg.fd_step});
    return out;
  }
  for (BackendKind k : defaults) out.push_back({k, cfg.fd_step});
  return out;
}

std::string backend_suffix(const Backend& b) { return std::string(to_string(b.kind)); }

}  // namespace

std::string_view to_string(Suite s) {
  for (auto [k, n] : kSuiteNames)
    if (k == s) return n;
  return "?";
}

bool parse_suite(std::string_view s, Suite& out) {
  for (auto [k, n] : kSuiteNames)
    if (n == s) {
      out = k;
      return true;
    }
  return false;
}

std::string_view to_string(StartPreset s) {
  for (auto [k, n] : kStartNames)
    if (k == s) return n;
  return "?";
}

bool parse_start(std::string_view s, StartPreset& out) {
  for (auto [k, n] : kStartNames)
    if (n == s) {
      out = k;
      return true;
    }
  return false;
}

double RunConfig::tol(const std::string& id, double fallback) const {
  const auto it = tolerances.find(id);
  return it == tolerances.end() ? fallback : it->second;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["suite"] = to_string(suite);
  j["chart"] = chart ? nlohmann::json(to_string(*chart)) : nlohmann::json("default");
  j["backend"] = backend ? nlohmann::json(to_string(*backend)) : nlohmann::json("default");
  j["fd_step"] = fd_step;
  j["seed"] = seed;
  j["samples"] = samples ? *samples : default_samples(suite);
  j["threads"] = threads;
  j["normalization"] = to_string(norm);
  if (suite == Suite::torus) {
    j["grid"] = grid;
    j["start"] = to_string(start);
    j["rule"] = to_string(rule);
    j["max_iterations"] = max_iterations;
    j["start_amplitude"] = start_amplitude;
  }
  if (suite == Suite::product) j["scan_samples"] = scan_samples;
  j["tolerances"] = tolerances;
  return j;
}

std::size_t default_samples(Suite s) {
  switch (s) {
    case Suite::algebra: return 10000;
    case Suite::hyperbolic: return 1000;
    case Suite::weitzenboeck: return 100;
    case Suite::product: return 200;
    case Suite::torus: return 20;
    case Suite::cotton: return 100;
  }
  return 0;
}

double properness_constant(const Normalization& n) {
  return n == Normalization::literal() ? std::sqrt(2.0) : std::sqrt(3.0) / 2.0;
}

// ---- algebra --------------------------------------------------------------------------

ReportDocument verify_algebra(const RunConfig& cfg) {
  ReportDocument doc(std::string(to_string(cfg.suite)), cfg.to_json());
  const std::size_t n = samples(cfg);
  const Normalization norm = cfg.norm;
  std::mt19937_64 rng(cfg.seed);

  double clifford_res = 0, actions = 0, chain = 0, abstract = 0, bracket = 0, equi = 0, rotation = 0;
  for (std::size_t s = 0; s < n; ++s) {
    const Vec3d v = random_vec(rng), xi = random_vec(rng);
    const Spinord p = random_spinor(rng), q = random_spinor(rng);
    clifford_res = std::max(clifford_res, max_abs(clifford(v, clifford(v, p)) + p * norm2(v)));
    const Quaternion qp = Quaternion::from_spinor(p);
    actions = std::max({actions, max_abs(clifford(v, p) - quat_gamma(Quaternion::imaginary(v), qp).to_spinor()),
                        max_abs(rho_action(xi, p) - quat_rho(Quaternion::imaginary(xi), qp).to_spinor())});
    chain = std::max(chain, std::abs(moment_chain_residual(p, v, xi, norm)));
    abstract = std::max(abstract, max_abs(moment_abstract(qp, Quaternion::from_spinor(q)) - moment_bilinear(p, q, norm)));
    bracket = std::max(bracket, max_abs(bracket_moment_identity(xi, p, q, norm)));
    equi = std::max(equi, max_abs(moment_equivariance_residual(xi, p, norm)));
    Quaternion u = Quaternion::from_spinor(q);
    u = (1.0 / std::sqrt(u.norm2())) * u;
    rotation = std::max(rotation, max_abs(moment_rotation_residual(u, p, norm)));
  }
  doc.add("algebra.clifford", "Clifford relation gamma(v)^2 = -|v|^2", clifford_res,
          cfg.tol("algebra.clifford", 1e-12), n);
  doc.add("algebra.quaternion_actions", "gamma(v) phi = v phi, rho(xi) phi = phi conj(xi)", actions,
          cfg.tol("algebra.quaternion_actions", 1e-12), n);
  doc.add("algebra.moment_chain", "2<mu(f,sigma), nu (x) xi> = -<(f,sigma), gamma+(nu) gamma-(xi) (f,sigma)>", chain,
          cfg.tol("algebra.moment_chain", 1e-12), n);
  doc.add("algebra.moment_abstract", "mu(Phi) = 1/2 gamma~*(Phi Phi*)", abstract,
          cfg.tol("algebra.moment_abstract", 1e-12), n);
  doc.add("algebra.bracket", "[xi, mu(phi, psi)] = mu(rho(xi) phi, psi) + mu(phi, rho(xi) psi)", bracket,
          cfg.tol("algebra.bracket", 1e-12), n);
  doc.add("algebra.equivariance", "mu is Sp(1)-equivariant", std::max(equi, rotation),
          cfg.tol("algebra.equivariance", 1e-12), n);

  // Properness and homogeneity on Gaussian-normalized unit spinors.
  const std::size_t np = 100 * n;
  const double c = properness_constant(norm);
  double lo = 1e300, homog = 0.0;
  for (std::size_t s = 0; s < np; ++s) {
    Spinord u{standard_normal(rng), {{standard_normal(rng), standard_normal(rng), standard_normal(rng)}}};
    u = u * (1.0 / std::sqrt(u.f * u.f + norm2(u.sigma)));
    const double m = fro_norm(moment_explicit(u, norm));
    lo = std::min(lo, m);
    if (s % 100 == 0) {
      const double t = uniform(rng, 0.1, 3.0);
      homog = std::max(homog, std::abs(fro_norm(moment_explicit(u * t, norm)) - t * t * m));
    }
  }
  doc.add("algebra.properness", "|mu(Phi)| >= c |Phi|^2", std::max(0.0, c - lo), cfg.tol("algebra.properness", 1e-6),
          np);
  doc.add("algebra.homogeneity", "mu(t Phi) = t^2 mu(Phi)", homog, cfg.tol("algebra.homogeneity", 1e-12), np / 100);
  doc.set_section("properness", {{"constant", c}, {"observed_min", lo}, {"samples", np}});
  return doc;
}

// ---- hyperbolic ------------------------------------------------------------------------

ReportDocument verify_hyperbolic(const RunConfig& cfg) {
  const auto charts = charts_for(cfg, {ChartKind::ball, ChartKind::half_space}, {ChartKind::ball, ChartKind::half_space});
  ReportDocument doc(std::string(to_string(cfg.suite)), cfg.to_json());
  const std::size_t n = samples(cfg);
  std::mt19937_64 rng(cfg.seed);

  const Backend canonical_backend{cfg.backend.value_or(BackendKind::ad), cfg.fd_step};
  double canon = 0.0;
  for (ChartKind k : charts) {
    const Evaluator ev{Chart(k), canonical_backend, cfg.norm};
    for (std::size_t s = 0; s < n; ++s) {
      const Point x = ev.chart.sample(rng);
      for (double f0 : {1.0, -1.0}) {
        const auto r = sw_residual(ev, Configuration::canonical(f0), x);
        canon = std::max({canon, max_abs(r.curvature), max_abs(r.dirac)});
      }
    }
  }
  doc.add("hyperbolic.canonical", "(0, +-1, 0) induces an irreducible solution", canon,
          cfg.tol("hyperbolic.canonical", 1e-10), n * charts.size());

  // The square of the linearization at (0, 1, 0) on compactly supported tangents.
  const std::size_t nt = std::min<std::size_t>(n, 50);
  const Evaluator ev{Chart(charts.front()), {cfg.backend.value_or(BackendKind::fd), cfg.fd_step}, cfg.norm};
  double off = 0.0, claimed = 0.0, derived = 0.0;
  for (std::size_t s = 0; s < nt; ++s) {
    const Point c = ev.chart.sample(rng);
    const double radius = 0.3;
    TangentInput u;
    u.a = random_bump_field(rng, 9, 2, 0.5, c, radius);
    u.f = random_bump_field(rng, 1, 2, 0.5, c, radius);
    u.sigma = random_bump_field(rng, 3, 2, 0.5, c, radius);
    u.xi = random_bump_field(rng, 3, 2, 0.5, c, radius);
    Point x = c;
    for (int i = 0; i < 3; ++i) x[i] += uniform(rng, -0.1, 0.1);
    if (!ev.chart.admissible(x)) x = c;
    const auto cl = big_L_squared_check(ev, u, x, DiagonalForm::claimed);
    const auto de = big_L_squared_check(ev, u, x, DiagonalForm::derived);
    off = std::max(off, cl.off_diagonal);
    claimed = std::max(claimed, cl.diagonal);
    derived = std::max(derived, de.diagonal);
  }
  doc.add("hyperbolic.l2_off_diagonal", "The square of the linearlization: off-diagonal terms vanish", off,
          cfg.tol("hyperbolic.l2_off_diagonal", 1e-5), nt);
  doc.add("hyperbolic.l2_diagonal", "L^2 = diag(Delta_LC + 2g tr + 2*tau, Delta + 6, Delta + 5, Delta_LC + 1)",
          claimed, cfg.tol("hyperbolic.l2_diagonal", 1e-5), nt);
  doc.add("hyperbolic.l2_diagonal_derived", "L^2 = diag(Delta_LC + g tr + *tau, Delta + 3, Delta + 3, Delta_LC + 1)",
          derived, cfg.tol("hyperbolic.l2_diagonal_derived", 1e-5), nt);
  return doc;
}

// ---- Weitzenboeck ----------------------------------------------------------------------

ReportDocument verify_weitzenboeck(const RunConfig& cfg) {
  const auto charts = charts_for(
      cfg, {ChartKind::euclidean, ChartKind::ball, ChartKind::half_space, ChartKind::s1xh2, ChartKind::s1xt2, ChartKind::t3},
      {ChartKind::euclidean, ChartKind::ball, ChartKind::half_space, ChartKind::s1xt2});
  ReportDocument doc(std::string(to_string(cfg.suite)), cfg.to_json());
  const std::size_t n = samples(cfg);
  for (const Backend& b : backends_for(cfg, {BackendKind::ad, BackendKind::fd})) {
    std::mt19937_64 rng(cfg.seed);
    double worst = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const ChartKind k = charts[s % charts.size()];
      const Evaluator ev{Chart(k), b, cfg.norm};
      const Point x = ev.chart.sample(rng);
      // half of the fields carry a nonzero connection
      const TensorField a = (s % 2) ? random_polynomial_field(rng, 9, 3, 0.3, x) : zero_field(9);
      const TensorField phi = random_polynomial_field(rng, 4, 3, 0.5, x);
      worst = std::max(worst, max_abs(weitzenboeck_residual(ev, a, phi, x)));
    }
    const std::string id = "weitzenboeck." + backend_suffix(b);
    const double fallback = b.kind == BackendKind::ad ? 1e-8 : 1e-6;
    doc.add(id, "Lichenerowicz-Weitzenbock formula D_A^2 = nabla*nabla + gamma~(F_A) + scal/4", worst,
            cfg.tol(id, fallback), n);
  }
  return doc;
}

// ---- product ---------------------------------------------------------------------------

ReportDocument verify_product(const RunConfig& cfg) {
  const auto charts = charts_for(cfg, {ChartKind::s1xh2, ChartKind::s1xt2}, {ChartKind::s1xh2, ChartKind::s1xt2});
  ReportDocument doc(std::string(to_string(cfg.suite)), cfg.to_json());
  doc.set_header("assumption", std::string(circle_invariance_assumption()));
  const std::size_t n = samples(cfg);
  const Backend b{cfg.backend.value_or(BackendKind::fd), cfg.fd_step};
  std::mt19937_64 rng(cfg.seed);

  auto rel = [](const Mat3d& a, const Mat3d& full) { return max_abs(a - full) / std::max(1.0, max_abs(full)); };
  std::array<double, kSixTerms> worst{};
  double residual = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const Evaluator ev{Chart(charts[s % charts.size()]), b, cfg.norm};
    const Point x = ev.chart.sample(rng);
    const ReducedConfig rc = ReducedConfig::random(rng, 2, 1.0, x);
    const SixTerms red = reduced_terms(ev, rc, x);
    const auto full = full_terms(ev, rc, x);
    for (int k = 0; k < kSixTerms; ++k) worst[k] = std::max(worst[k], rel(block_assemble(red[k]), full[k]));
    residual = std::max(residual, rel(block_assemble(reduced_residual(ev, rc, x).as_block()),
                                      sw_residual(ev, rc.lift(), x).curvature));
  }
  for (int k = 0; k < kSixTerms; ++k) {
    const std::string id = "product.block." + std::to_string(k + 1);
    doc.add(id, std::string(term_name(k)) + " = " + std::string(term_block_display(k)), worst[k], cfg.tol(id, 1e-6), n);
  }
  doc.add("product.reduced_system", "the curvature equation is equivalent to the four reduced equations", residual,
          cfg.tol("product.reduced_system", 1e-6), n);

  const double root_tol = cfg.tol("product.last_block_scan", 1e-8);
  const LastBlockReport scan = last_block_solve(cfg.scan_samples, root_tol, cfg.norm.mu_scale, cfg.threads);
  doc.add_condition("product.last_block_scan", "omega = 0 and therefore f = 0", scan.unique_origin, scan.starts);
  // Where the last block vanishes, the third equation holds identically.
  double chain = 0.0;
  for (const Unknowns& u : scan.solutions) {
    const double m = cfg.norm.mu_scale;
    const Vec2d w{u[2], u[3]}, sw = star_sigma(w);
    for (int i = 0; i < 2; ++i) chain = std::max(chain, std::abs(2 * m * u[0] * sw[i] - u[1] * w[i]));
  }
  doc.add("product.third_equation", "lambda omega - 2f *omega = 0 once the last block vanishes", chain,
          cfg.tol("product.third_equation", 1e-12), scan.solutions.size());
  doc.set_section("scan", to_json(scan));
  return doc;
}

// ---- torus -----------------------------------------------------------------------------

namespace {

GridField constant_grid(const TorusGrid& g, const std::vector<double>& v) {
  GridField c(kConfigSlots, g.points());
  for (int q = 0; q < kConfigSlots; ++q)
    for (std::size_t p = 0; p < g.points(); ++p) c(q, p) = v[q];
  return c;
}

GridField random_tangent(const TorusGrid& g, std::mt19937_64& rng) {
  const GridField c = random_config(g, rng, 1, 1.0), x = random_config(g, rng, 1, 1.0);
  GridField t(kTangentSlots, g.points());
  std::copy(c.component(0), c.component(0) + kConfigSlots * g.points(), t.component(0));
  std::copy(x.component(0), x.component(0) + 3 * g.points(), t.component(kConfigSlots));
  return t;
}

// max over reducible flat configurations of the cross-group part of L^2.
double l2_cross_groups(const TorusGrid& g, std::mt19937_64& rng, const Normalization& norm, int configs) {
  constexpr std::pair<int, int> groups[] = {{0, 9}, {9, 4}, {13, 3}};
  double worst = 0.0;
  for (int n = 0; n < configs; ++n) {
    std::vector<double> v(kConfigSlots, 0.0);
    if (n > 0) {
      // a = u (x) w is constant of rank one, hence flat
      Vec3d u = random_vec(rng), w = random_vec(rng);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v[3 * i + j] = u[i] * w[j];
    }
    const GridField c = constant_grid(g, v);
    for (auto [first, count] : groups) {
      GridField t = random_tangent(g, rng);
      for (int q = 0; q < kTangentSlots; ++q)
        if (q < first || q >= first + count) std::fill(t.component(q), t.component(q) + g.points(), 0.0);
      const GridField sq = big_L_apply(g, c, big_L_apply(g, c, t, norm), norm);
      for (auto [f2, c2] : groups)
        if (f2 != first) worst = std::max(worst, norm_inf(sq, f2, c2));
    }
  }
  return worst;
}

}  // namespace

ReportDocument solve_torus(const RunConfig& cfg) {
  charts_for(cfg, {ChartKind::t3}, {ChartKind::t3});
  if (cfg.grid < 4 || (cfg.grid & (cfg.grid - 1)) != 0) throw ConfigError("grid resolution must be a power of two >= 4");
  if (cfg.max_iterations < 0) throw ConfigError("max iterations must be nonnegative");
  ReportDocument doc(std::string(to_string(cfg.suite)), cfg.to_json());
  const TorusGrid g(cfg.grid, cfg.threads);
  SolverOptions opt;
  opt.rule = cfg.rule;
  opt.max_iterations = cfg.max_iterations;
  opt.norm = cfg.norm;

  std::vector<GridField> starts;
  std::mt19937_64 rng(cfg.seed);
  if (cfg.start == StartPreset::zero) {
    starts.emplace_back(kConfigSlots, g.points());
  } else if (cfg.start == StartPreset::phi_one) {
    std::vector<double> v(kConfigSlots, 0.0);
    v[9] = 1.0;
    starts.push_back(constant_grid(g, v));
  } else {
    // lowest nonzero Fourier modes only; higher modes stall Gauss-Newton at 16^3
    const int kmax = 1;
    for (std::size_t s = 0; s < samples(cfg); ++s) {
      std::mt19937_64 srng(cfg.seed + s);
      starts.push_back(random_config(g, srng, kmax, cfg.start_amplitude));
    }
  }

  double phi = 0.0, curv = 0.0, energy = 0.0, gauge = 0.0;
  std::size_t converged = 0;
  nlohmann::json flows = nlohmann::json::array();
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const FlowReport r = flow_to_solution(g, starts[s], opt, cfg.seed + 1000 + s);
    nlohmann::json j = to_json(r);
    j["start"] = s;
    flows.push_back(std::move(j));
    if (!r.converged) continue;
    ++converged;
    phi = std::max(phi, r.phi_sup);
    curv = std::max(curv, r.curvature_l2);
    energy = std::max(energy, r.energy.sum());
    gauge = std::max(gauge, r.gauge_sanity);
  }
  const std::size_t n = starts.size();
  doc.add_condition("torus.converged", "every flow reaches residual <= tolerance", converged == n, n);
  doc.add("torus.phi_sup", "if scal_g >= 0 then mu(Phi) = 0 and hence Phi = 0", phi, cfg.tol("torus.phi_sup", 1e-4),
          converged);
  doc.add("torus.curvature", "converged endpoints are flat connections", curv, cfg.tol("torus.curvature", 1e-4),
          converged);
  doc.add("torus.energy", "|nabla_A Phi|^2 + |mu(Phi)|^2 + 1/4 int scal |Phi|^2 = 0", energy,
          cfg.tol("torus.energy", 1e-6), converged);
  doc.add("torus.gauge_sanity", "the residual is gauge invariant", gauge, cfg.tol("torus.gauge_sanity", 1e-6),
          converged);

  std::mt19937_64 lrng(cfg.seed + 7);
  doc.add("torus.l2_off_diagonal", "all the off-diagonal terms vanish at reducible solutions",
          l2_cross_groups(g, lrng, cfg.norm, 3), cfg.tol("torus.l2_off_diagonal", 1e-8), 3);
  doc.set_section("flows", flows);
  doc.set_section("summary_flows", {{"starts", n}, {"converged", converged}});
  return doc;
}

// ---- Cotton ----------------------------------------------------------------------------

ReportDocument verify_cotton(const RunConfig& cfg) {
  const auto charts = charts_for(cfg, {ChartKind::ball, ChartKind::half_space, ChartKind::euclidean},
                                 {ChartKind::ball, ChartKind::half_space});
  ReportDocument doc(std::string(to_string(cfg.suite)), cfg.to_json());
  const std::size_t n = samples(cfg);
  std::mt19937_64 rng(cfg.seed);

  double model = 0.0;
  for (ChartKind k : charts) {
    const Chart chart(k);
    for (std::size_t s = 0; s < n; ++s) model = std::max(model, max_abs(cotton(chart, chart.sample(rng)).cotton));
  }
  doc.add("cotton.model", "C_g = 0 for hyperbolic metrics", model, cfg.tol("cotton.model", 1e-8), n * charts.size());

  const Backend b{cfg.backend.value_or(BackendKind::ad), cfg.fd_step};
  double sym = 0.0, trace = 0.0, conf = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const TensorField gm = constant_field({1, 0, 0, 1, 0, 1}) + random_polynomial_field(rng, 6, 3, 0.1);
    const TensorField phi = random_polynomial_field(rng, 1, 3, 0.3);
    const TensorField gt(6, [gm, phi](const JetPoint& p) {
      auto v = gm(p);
      const Jet w = exp(phi(p)[0] * 2.0);
      for (auto& c : v) c = c * w;
      return v;
    });
    const Point x{uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3)};
    const CottonData c = cotton(gm, x, b);
    const CottonData ct = cotton(gt, x, b);
    sym = std::max(sym, skew_norm(c.cotton));
    trace = std::max(trace, std::abs(metric_trace(c.metric, c.cotton)));
    const double ef = std::exp(-phi.values(x)[0]);
    conf = std::max(conf, max_abs(ct.cotton - c.cotton * ef) / std::max(1e-300, max_abs(c.cotton)));
  }
  doc.add("cotton.symmetric", "C_g is symmetric", sym, cfg.tol("cotton.symmetric", 1e-8), n);
  doc.add("cotton.trace_free", "C_g is trace-free", trace, cfg.tol("cotton.trace_free", 1e-8), n);
  doc.add("cotton.conformal", "e^{-f} C_g = C_{e^{2f} g}", conf, cfg.tol("cotton.conformal", 1e-6), n);
  return doc;
}

ReportDocument run_suite(const RunConfig& cfg) {
  if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
  if (cfg.fd_step <= 0.0) throw ConfigError("fd step must be positive");
  switch (cfg.suite) {
    case Suite::algebra: return verify_algebra(cfg);
    case Suite::hyperbolic: return verify_hyperbolic(cfg);
    case Suite::weitzenboeck: return verify_weitzenboeck(cfg);
    case Suite::product: return verify_product(cfg);
    case Suite::torus: return solve_torus(cfg);
    case Suite::cotton: return verify_cotton(cfg);
  }
  throw ConfigError("unknown suite");
}

}  // namespace spsw
