#include "spsw/torus.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "spsw/parallel.hpp"

namespace spsw {
namespace {

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

struct TorusGrid::Plans {
  std::size_t complex_size = 0;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_complex* work = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Plans(int n) {
    complex_size = static_cast<std::size_t>(n) * n * (n / 2 + 1);
    std::lock_guard lock(planner_mutex());
    real = fftw_alloc_real(static_cast<std::size_t>(n) * n * n);
    spec = fftw_alloc_complex(complex_size);
    work = fftw_alloc_complex(complex_size);
    forward = fftw_plan_dft_r2c_3d(n, n, n, real, spec, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_3d(n, n, n, work, real, FFTW_ESTIMATE);
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(real);
    fftw_free(spec);
    fftw_free(work);
  }
};

TorusGrid::TorusGrid(int n, int threads) : n_(n), threads_(threads) {
  if (n < 4 || (n & (n - 1)) != 0) throw std::invalid_argument("grid resolution must be a power of two >= 4");
  points_ = static_cast<std::size_t>(n) * n * n;
  plans_ = std::make_unique<Plans>(n);
}

TorusGrid::~TorusGrid() = default;

double TorusGrid::spacing() const { return kTwoPi / n_; }
double TorusGrid::cell_volume() const { return std::pow(spacing(), 3); }

Point TorusGrid::coordinate(std::size_t p) const {
  const std::size_t n = n_;
  const double h = spacing();
  return {static_cast<double>(p / (n * n)) * h, static_cast<double>((p / n) % n) * h, static_cast<double>(p % n) * h};
}

template <class Mult>
void TorusGrid::spectral_apply(const double* in, double* out, Mult&& mult) const {
  const int n = n_;
  const int nc = n / 2 + 1;
  std::copy(in, in + points_, plans_->real);
  fftw_execute(plans_->forward);
  const double scale = 1.0 / static_cast<double>(points_);
  for (int i = 0; i < n; ++i) {
    const int ki = i <= n / 2 ? i : i - n;
    for (int j = 0; j < n; ++j) {
      const int kj = j <= n / 2 ? j : j - n;
      for (int l = 0; l < nc; ++l) {
        const std::size_t idx = (static_cast<std::size_t>(i) * n + j) * nc + l;
        const std::complex<double> c(plans_->spec[idx][0], plans_->spec[idx][1]);
        const std::complex<double> r = mult(ki, kj, l, c) * scale;
        plans_->work[idx][0] = r.real();
        plans_->work[idx][1] = r.imag();
      }
    }
  }
  fftw_execute(plans_->backward);
  std::copy(plans_->real, plans_->real + points_, out);
}

void TorusGrid::derivative(const double* in, int axis, double* out) const {
  const int half = n_ / 2;
  spectral_apply(in, out, [axis, half](int ki, int kj, int kl, std::complex<double> c) {
    const int k = axis == 0 ? ki : axis == 1 ? kj : kl;
    if (std::abs(k) == half) return std::complex<double>(0.0);
    return std::complex<double>(0.0, static_cast<double>(k)) * c;
  });
}

void TorusGrid::dealias(double* data) const {
  const int cut = n_ / 3;
  spectral_apply(data, data, [cut](int ki, int kj, int kl, std::complex<double> c) {
    if (std::abs(ki) > cut || std::abs(kj) > cut || kl > cut) return std::complex<double>(0.0);
    return c;
  });
}

void TorusGrid::smooth(double* data) const {
  spectral_apply(data, data, [](int ki, int kj, int kl, std::complex<double> c) {
    return c / (1.0 + ki * ki + kj * kj + kl * kl);
  });
}

double TorusGrid::aliased_energy_fraction(const double* data) const {
  const int n = n_;
  const int nc = n / 2 + 1;
  const int cut = n / 3;
  std::copy(data, data + points_, plans_->real);
  fftw_execute(plans_->forward);
  double total = 0.0, aliased = 0.0;
  for (int i = 0; i < n; ++i) {
    const int ki = i <= n / 2 ? i : i - n;
    for (int j = 0; j < n; ++j) {
      const int kj = j <= n / 2 ? j : j - n;
      for (int l = 0; l < nc; ++l) {
        const std::size_t idx = (static_cast<std::size_t>(i) * n + j) * nc + l;
        const double e = plans_->spec[idx][0] * plans_->spec[idx][0] + plans_->spec[idx][1] * plans_->spec[idx][1];
        total += e;
        if (std::abs(ki) > cut || std::abs(kj) > cut || l > cut) aliased += e;
      }
    }
  }
  return total > 0.0 ? aliased / total : 0.0;
}

double inner(const TorusGrid& g, const GridField& a, const GridField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
  return s * g.cell_volume();
}

double norm_l2(const TorusGrid& g, const GridField& a) { return std::sqrt(inner(g, a, a)); }

double norm_inf(const GridField& a, int first, int count) {
  double m = 0.0;
  for (int q = first; q < first + count; ++q)
    for (std::size_t p = 0; p < a.points; ++p) m = std::max(m, std::abs(a(q, p)));
  return m;
}

void axpy(double alpha, const GridField& x, GridField& y) {
  for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] += alpha * x.data[i];
}

GridField sample(const TorusGrid& g, const TensorField& f) {
  GridField out(f.components(), g.points());
  for (std::size_t p = 0; p < g.points(); ++p) {
    const auto v = f.values(g.coordinate(p));
    for (int q = 0; q < f.components(); ++q) out(q, p) = v[q];
  }
  for (int q = 0; q < f.components(); ++q) {
    const double frac = g.aliased_energy_fraction(out.component(q));
    if (frac > 1e-20)
      throw std::runtime_error("field bandwidth exceeds n/3 on a " + std::to_string(g.n()) +
                               "^3 grid (aliased energy fraction " + std::to_string(frac) + ")");
  }
  return out;
}

GridField sample_config(const TorusGrid& g, const TensorField& a, const TensorField& f, const TensorField& sigma) {
  if (a.components() != 9 || f.components() != 1 || sigma.components() != 3)
    throw std::invalid_argument("configuration fields must have 9, 1 and 3 components");
  const GridField ga = sample(g, a), gf = sample(g, f), gs = sample(g, sigma);
  GridField out(kConfigSlots, g.points());
  std::copy(ga.data.begin(), ga.data.end(), out.component(0));
  std::copy(gf.data.begin(), gf.data.end(), out.component(9));
  std::copy(gs.data.begin(), gs.data.end(), out.component(10));
  return out;
}

GridField random_config(const TorusGrid& g, std::mt19937_64& rng, int kmax, double amplitude) {
  if (3 * kmax > g.n()) throw std::invalid_argument("random start bandwidth exceeds n/3");
  const int n = g.n();
  const int m = 2 * kmax + 1;
  // Tables e^{i k x_j} for the grid coordinates.
  std::vector<std::complex<double>> phase(static_cast<std::size_t>(m) * n);
  for (int k = -kmax; k <= kmax; ++k)
    for (int j = 0; j < n; ++j) phase[(k + kmax) * n + j] = std::polar(1.0, k * g.spacing() * j);

  GridField out(kConfigSlots, g.points());
  for (int q = 0; q < kConfigSlots; ++q) {
    std::vector<std::complex<double>> coeff(static_cast<std::size_t>(m) * m * m);
    for (auto& c : coeff) c = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    double* dst = out.component(q);
    for (std::size_t p = 0; p < g.points(); ++p) {
      const std::size_t i = p / (n * n), j = (p / n) % n, l = p % n;
      std::complex<double> s = 0.0;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c)
            s += coeff[(a * m + b) * m + c] * phase[a * n + i] * phase[b * n + j] * phase[c * n + l];
      dst[p] = s.real();
    }
  }
  // Rescale the connection and the spinor to a random fraction of the amplitude.
  for (auto [first, count] : {std::pair{0, 9}, std::pair{9, 4}}) {
    const double sup = norm_inf(out, first, count);
    const double target = amplitude * uniform(rng, 0.5, 1.0);
    if (sup > 0.0)
      for (int q = first; q < first + count; ++q)
        for (std::size_t p = 0; p < g.points(); ++p) out(q, p) *= target / sup;
  }
  return out;
}

// ---- pointwise packing ------------------------------------------------------------------

namespace {

struct Gradients {
  // d[l] holds the derivative along axis l of every component.
  std::array<GridField, 3> d;
};

Gradients gradients(const TorusGrid& g, const GridField& f) {
  Gradients out;
  for (int l = 0; l < 3; ++l) out.d[l] = GridField(f.components, f.points);
  for (int q = 0; q < f.components; ++q)
    for (int l = 0; l < 3; ++l) g.derivative(f.component(q), l, out.d[l].component(q));
  return out;
}

Fields<double> fields_at(const GridField& c, std::size_t p) {
  Fields<double> f;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f.a(i, j) = c(3 * i + j, p);
  f.f = c(9, p);
  for (int i = 0; i < 3; ++i) f.sigma[i] = c(10 + i, p);
  return f;
}

Tangent<double> tangent_at(const GridField& t, std::size_t p) {
  Tangent<double> u;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) u.a(i, j) = t(3 * i + j, p);
  u.f = t(9, p);
  for (int i = 0; i < 3; ++i) u.sigma[i] = t(10 + i, p);
  if (t.components >= kTangentSlots)
    for (int i = 0; i < 3; ++i) u.xi[i] = t(13 + i, p);
  return u;
}

FieldDerivs<double> field_derivs_at(const Gradients& d, std::size_t p) {
  FieldDerivs<double> fd;
  for (int l = 0; l < 3; ++l) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) fd.da[l](i, j) = d.d[l](3 * i + j, p);
    fd.df[l] = d.d[l](9, p);
    for (int j = 0; j < 3; ++j) fd.dsigma(l, j) = d.d[l](10 + j, p);
  }
  return fd;
}

TangentDerivs<double> tangent_derivs_at(const Gradients& d, std::size_t p) {
  TangentDerivs<double> td;
  const FieldDerivs<double> fd = field_derivs_at(d, p);
  td.da = fd.da;
  td.df = fd.df;
  td.dsigma = fd.dsigma;
  if (d.d[0].components >= kTangentSlots)
    for (int l = 0; l < 3; ++l)
      for (int j = 0; j < 3; ++j) td.dxi(l, j) = d.d[l](13 + j, p);
  return td;
}

void store(GridField& out, std::size_t p, const SwResidual<double>& r) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(3 * i + j, p) = r.curvature(i, j);
  out(9, p) = r.dirac.f;
  for (int i = 0; i < 3; ++i) out(10 + i, p) = r.dirac.sigma[i];
}

void store(GridField& out, std::size_t p, const Tangent<double>& t) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(3 * i + j, p) = t.a(i, j);
  out(9, p) = t.f;
  for (int i = 0; i < 3; ++i) out(10 + i, p) = t.sigma[i];
  if (out.components >= kTangentSlots)
    for (int i = 0; i < 3; ++i) out(13 + i, p) = t.xi[i];
}

Tangent<double> basis_tangent(int q) {
  Tangent<double> u;
  if (q < 9)
    u.a(q / 3, q % 3) = 1.0;
  else if (q == 9)
    u.f = 1.0;
  else
    u.sigma[q - 10] = 1.0;
  return u;
}

TangentDerivs<double> basis_derivs(int axis, int q) {
  TangentDerivs<double> d;
  if (q < 9)
    d.da[axis](q / 3, q % 3) = 1.0;
  else if (q == 9)
    d.df[axis] = 1.0;
  else
    d.dsigma(axis, q - 10) = 1.0;
  return d;
}

// The derivative part of dSW has constant coefficients on the flat torus:
// coeff[l][q] is the image of the unit derivative d_l u_q.
const std::array<std::array<SwResidual<double>, kConfigSlots>, 3>& derivative_coefficients() {
  static const auto table = [] {
    std::array<std::array<SwResidual<double>, kConfigSlots>, 3> t;
    const Fields<double> zero;
    for (int l = 0; l < 3; ++l)
      for (int q = 0; q < kConfigSlots; ++q)
        t[l][q] = kern::dsw(zero, Tangent<double>{}, basis_derivs(l, q), Normalization::consistent());
    return t;
  }();
  return table;
}

}  // namespace

GridField sw_map(const TorusGrid& g, const GridField& config, const Normalization& n) {
  const Gradients d = gradients(g, config);
  GridField out(kResidualSlots, g.points());
  const Mat3d zero;
  parallel_for(g.points(), g.threads(), [&](std::size_t p) {
    auto r = kern::sw_residual(zero, fields_at(config, p), field_derivs_at(d, p), n);
    r.dirac = -r.dirac;
    store(out, p, r);
  });
  return out;
}

GridField assemble_residual(const TorusGrid& g, const GridField& config, const Normalization& n) {
  GridField r = sw_map(g, config, n);
  for (int q = 9; q < kResidualSlots; ++q)
    for (std::size_t p = 0; p < r.points; ++p) r(q, p) = -r(q, p);
  return r;
}

namespace {

// dSW at a fixed configuration: u -> A0(x) u + sum_l C_l d_l u, with the
// pointwise matrices A0 cached once so repeated applications (inner CG
// solves) only cost derivatives and small mat-vecs.
class LinearizedSw {
 public:
  LinearizedSw(const TorusGrid& g, const GridField& config, const Normalization& n)
      : g_(g), a0_(g.points() * kBlock) {
    parallel_for(g.points(), g.threads(), [&](std::size_t p) {
      const Fields<double> c = fields_at(config, p);
      double* m = a0_.data() + p * kBlock;
      for (int q = 0; q < kConfigSlots; ++q) {
        const auto col = pack(kern::dsw(c, basis_tangent(q), TangentDerivs<double>{}, n));
        for (int r = 0; r < kResidualSlots; ++r) m[r * kConfigSlots + q] = col[r];
      }
    });
    const auto& coeff = derivative_coefficients();
    for (int l = 0; l < 3; ++l)
      for (int q = 0; q < kConfigSlots; ++q) {
        const auto col = pack(coeff[l][q]);
        for (int r = 0; r < kResidualSlots; ++r) c_[l][r * kConfigSlots + q] = col[r];
      }
  }

  GridField apply(const GridField& u) const {
    const Gradients d = gradients(g_, u);
    GridField out(kResidualSlots, g_.points());
    parallel_for(g_.points(), g_.threads(), [&](std::size_t p) {
      const double* m = a0_.data() + p * kBlock;
      for (int r = 0; r < kResidualSlots; ++r) {
        double s = 0.0;
        for (int q = 0; q < kConfigSlots; ++q) {
          s += m[r * kConfigSlots + q] * u(q, p);
          for (int l = 0; l < 3; ++l) s += c_[l][r * kConfigSlots + q] * d.d[l](q, p);
        }
        out(r, p) = s;
      }
    });
    return out;
  }

  GridField adjoint(const GridField& res) const {
    GridField out(kConfigSlots, g_.points());
    std::array<GridField, 3> flux;
    for (auto& f : flux) f = GridField(kConfigSlots, g_.points());
    parallel_for(g_.points(), g_.threads(), [&](std::size_t p) {
      const double* m = a0_.data() + p * kBlock;
      for (int q = 0; q < kConfigSlots; ++q) {
        double s = 0.0, f0 = 0.0, f1 = 0.0, f2 = 0.0;
        for (int r = 0; r < kResidualSlots; ++r) {
          const double v = res(r, p);
          s += m[r * kConfigSlots + q] * v;
          f0 += c_[0][r * kConfigSlots + q] * v;
          f1 += c_[1][r * kConfigSlots + q] * v;
          f2 += c_[2][r * kConfigSlots + q] * v;
        }
        out(q, p) = s;
        flux[0](q, p) = f0;
        flux[1](q, p) = f1;
        flux[2](q, p) = f2;
      }
    });
    // The adjoint of d_l is -d_l.
    std::vector<double> tmp(g_.points());
    for (int l = 0; l < 3; ++l)
      for (int q = 0; q < kConfigSlots; ++q) {
        g_.derivative(flux[l].component(q), l, tmp.data());
        double* dst = out.component(q);
        for (std::size_t p = 0; p < g_.points(); ++p) dst[p] -= tmp[p];
      }
    return out;
  }

 private:
  static constexpr std::size_t kBlock = kResidualSlots * kConfigSlots;

  static std::array<double, kResidualSlots> pack(const SwResidual<double>& r) {
    std::array<double, kResidualSlots> v;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) v[3 * i + j] = r.curvature(i, j);
    v[9] = r.dirac.f;
    for (int i = 0; i < 3; ++i) v[10 + i] = r.dirac.sigma[i];
    return v;
  }

  const TorusGrid& g_;
  std::vector<double> a0_;
  std::array<std::array<double, kBlock>, 3> c_{};
};

}  // namespace

GridField dsw_apply(const TorusGrid& g, const GridField& config, const GridField& tangent, const Normalization& n) {
  const Gradients d = gradients(g, tangent);
  GridField out(kResidualSlots, g.points());
  parallel_for(g.points(), g.threads(), [&](std::size_t p) {
    store(out, p, kern::dsw(fields_at(config, p), tangent_at(tangent, p), tangent_derivs_at(d, p), n));
  });
  return out;
}

GridField dsw_adjoint(const TorusGrid& g, const GridField& config, const GridField& residual,
                      const Normalization& n) {
  return LinearizedSw(g, config, n).adjoint(residual);
}

GridField gauge_apply(const TorusGrid& g, const GridField& config, const GridField& xi) {
  const Gradients d = gradients(g, xi);
  GridField out(kConfigSlots, g.points());
  parallel_for(g.points(), g.threads(), [&](std::size_t p) {
    Vec3d x;
    Mat3d dx;
    for (int m = 0; m < 3; ++m) {
      x[m] = xi(m, p);
      for (int l = 0; l < 3; ++l) dx(l, m) = d.d[l](m, p);
    }
    store(out, p, kern::gauge(fields_at(config, p), x, dx));
  });
  return out;
}

GridField gauge_adjoint_apply(const TorusGrid& g, const GridField& config, const GridField& tangent) {
  const Gradients d = gradients(g, tangent);
  GridField out(3, g.points());
  parallel_for(g.points(), g.threads(), [&](std::size_t p) {
    const Vec3d v = kern::gauge_adjoint(fields_at(config, p), tangent_at(tangent, p), tangent_derivs_at(d, p));
    for (int m = 0; m < 3; ++m) out(m, p) = v[m];
  });
  return out;
}

GridField big_L_apply(const TorusGrid& g, const GridField& config, const GridField& tangent16,
                      const Normalization& n) {
  if (tangent16.components != kTangentSlots) throw std::invalid_argument("tangent must have 16 components");
  const Gradients d = gradients(g, tangent16);
  GridField out(kTangentSlots, g.points());
  parallel_for(g.points(), g.threads(), [&](std::size_t p) {
    store(out, p, kern::big_l(fields_at(config, p), tangent_at(tangent16, p), tangent_derivs_at(d, p), n));
  });
  return out;
}

GridField grid_d(const TorusGrid& g, const GridField& f) {
  GridField out(3, g.points());
  for (int l = 0; l < 3; ++l) g.derivative(f.component(0), l, out.component(l));
  return out;
}

GridField grid_codiff(const TorusGrid& g, const GridField& s) {
  GridField out(1, g.points());
  std::vector<double> tmp(g.points());
  for (int l = 0; l < 3; ++l) {
    g.derivative(s.component(l), l, tmp.data());
    for (std::size_t p = 0; p < g.points(); ++p) out(0, p) -= tmp[p];
  }
  return out;
}

double objective(const TorusGrid& g, const GridField& config, const Normalization& n) {
  const GridField r = sw_map(g, config, n);
  return 0.5 * inner(g, r, r);
}

GridField objective_gradient(const TorusGrid& g, const GridField& config, const Normalization& n) {
  return dsw_adjoint(g, config, sw_map(g, config, n), n);
}

EnergyTriple energy_identity(const TorusGrid& g, const GridField& config, const Normalization& n) {
  const Gradients d = gradients(g, config);
  std::vector<double> grad_density(g.points()), moment_density(g.points());
  parallel_for(g.points(), g.threads(), [&](std::size_t p) {
    const Fields<double> c = fields_at(config, p);
    const FieldDerivs<double> fd = field_derivs_at(d, p);
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      const Vec3d ai = c.a.row(i);
      const Spinord nab{fd.df[i] + dot(ai, c.sigma), fd.dsigma.row(i) - ai * c.f + cross(ai, c.sigma)};
      s += norm2(nab);
    }
    grad_density[p] = s;
    moment_density[p] = norm2(moment_explicit(Spinord{c.f, c.sigma}, n));
  });
  EnergyTriple e;
  for (std::size_t p = 0; p < g.points(); ++p) {
    e.grad_phi += grad_density[p];
    e.moment += moment_density[p];
  }
  e.grad_phi *= g.cell_volume();
  e.moment *= g.cell_volume();
  return e;
}

double curvature_norm(const TorusGrid& g, const GridField& config) {
  GridField connection = config;
  for (int q = 9; q < kConfigSlots; ++q)
    for (std::size_t p = 0; p < connection.points; ++p) connection(q, p) = 0.0;
  const GridField r = sw_map(g, connection, Normalization::consistent());
  double s = 0.0;
  for (int q = 0; q < 9; ++q)
    for (std::size_t p = 0; p < r.points; ++p) s += r(q, p) * r(q, p);
  return std::sqrt(s * g.cell_volume());
}

// ---- solver ---------------------------------------------------------------------------

namespace {

void dealias_all(const TorusGrid& g, GridField& f) {
  for (int q = 0; q < f.components; ++q) g.dealias(f.component(q));
}

// Preconditioned CG on (J*J + lambda) x = b to relative accuracy eta.
GridField gauss_newton_direction(const TorusGrid& g, const LinearizedSw& jac, const GridField& rhs, double lambda,
                                 double eta, const SolverOptions& opt) {
  auto apply = [&](const GridField& v) {
    GridField out = jac.adjoint(jac.apply(v));
    if (opt.dealias_steps) dealias_all(g, out);
    axpy(lambda, v, out);
    return out;
  };
  auto precondition = [&](const GridField& v) {
    GridField z = v;
    for (int q = 0; q < z.components; ++q) g.smooth(z.component(q));
    return z;
  };
  GridField x(kConfigSlots, g.points());
  GridField r = rhs;
  GridField z = precondition(r);
  GridField p = z;
  double rz = inner(g, r, z);
  const double b_norm = norm_l2(g, rhs);
  if (b_norm == 0.0) return x;
  for (int it = 0; it < opt.cg_max_iterations; ++it) {
    const GridField ap = apply(p);
    const double pap = inner(g, p, ap);
    if (pap <= 0.0) break;
    const double alpha = rz / pap;
    axpy(alpha, p, x);
    axpy(-alpha, ap, r);
    if (norm_l2(g, r) <= eta * b_norm) break;
    z = precondition(r);
    const double rz_new = inner(g, r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < p.data.size(); ++i) p.data[i] = z.data[i] + beta * p.data[i];
  }
  return x;
}

}  // namespace

FlowReport flow_to_solution(const TorusGrid& g, const GridField& start, const SolverOptions& opt,
                            std::uint64_t gauge_seed) {
  if (start.components != kConfigSlots || start.points != g.points())
    throw std::invalid_argument("start configuration does not match the grid");
  FlowReport rep;
  GridField c = start;
  GridField r = sw_map(g, c, opt.norm);
  double energy = 0.5 * inner(g, r, r);
  rep.residual_history.push_back(std::sqrt(2.0 * energy));
  rep.status = "max-iterations";
  double step = opt.initial_step;

  for (int it = 0; it < opt.max_iterations; ++it) {
    if (std::sqrt(2.0 * energy) <= opt.tolerance) {
      rep.converged = true;
      rep.status = "converged";
      break;
    }
    const LinearizedSw jac(g, c, opt.norm);
    GridField grad = jac.adjoint(r);
    if (opt.dealias_steps) dealias_all(g, grad);
    GridField dir;
    if (opt.rule == StepRule::gauss_newton) {
      GridField rhs = grad;
      for (auto& v : rhs.data) v = -v;
      // Inexact Newton: solve loosely far from a zero, to cg_tolerance near one.
      const double eta = std::clamp(std::sqrt(norm_l2(g, grad)), opt.cg_tolerance, 0.1);
      dir = gauss_newton_direction(g, jac, rhs, opt.damping * std::sqrt(2.0 * energy), eta, opt);
      if (opt.dealias_steps) dealias_all(g, dir);
      step = 1.0;
    } else {
      dir = grad;
      for (auto& v : dir.data) v = -v;
      step = opt.initial_step;
    }
    double slope = inner(g, grad, dir);
    if (slope >= 0.0) {
      // Not a descent direction; fall back to steepest descent.
      dir = grad;
      for (auto& v : dir.data) v = -v;
      slope = inner(g, grad, dir);
    }
    bool accepted = false;
    while (step >= opt.min_step) {
      GridField trial = c;
      axpy(step, dir, trial);
      GridField tr = sw_map(g, trial, opt.norm);
      const double te = 0.5 * inner(g, tr, tr);
      if (te <= energy + opt.armijo_c * step * slope) {
        c = std::move(trial);
        r = std::move(tr);
        energy = te;
        accepted = true;
        break;
      }
      step *= opt.backtrack;
    }
    if (!accepted) {
      rep.status = "step-underflow";
      break;
    }
    ++rep.iterations;
    rep.residual_history.push_back(std::sqrt(2.0 * energy));
  }
  if (!rep.converged && std::sqrt(2.0 * energy) <= opt.tolerance) {
    rep.converged = true;
    rep.status = "converged";
  }

  rep.final_residual = std::sqrt(2.0 * energy);
  rep.phi_sup = norm_inf(c, 9, 4);
  rep.curvature_l2 = curvature_norm(g, c);
  rep.energy = energy_identity(g, c, opt.norm);

  // Gauge sanity: move along a small random gauge direction.
  std::mt19937_64 rng(gauge_seed);
  GridField xi = random_config(g, rng, std::min(2, g.n() / 3), 1.0);
  GridField xi3(3, g.points());
  std::copy(xi.component(0), xi.component(0) + 3 * g.points(), xi3.component(0));
  constexpr double eps_gauge = 1e-4;
  GridField moved = c;
  axpy(eps_gauge, gauge_apply(g, c, xi3), moved);
  rep.gauge_sanity = std::abs(norm_l2(g, sw_map(g, moved, opt.norm)) - rep.final_residual);
  rep.endpoint = std::move(c);
  return rep;
}

nlohmann::json to_json(const FlowReport& r, bool include_history) {
  nlohmann::json j;
  j["converged"] = r.converged;
  j["status"] = r.status;
  j["iterations"] = r.iterations;
  j["final_residual"] = r.final_residual;
  j["phi_sup"] = r.phi_sup;
  j["curvature_l2"] = r.curvature_l2;
  j["energy"] = {{"grad_phi", r.energy.grad_phi},
                 {"moment", r.energy.moment},
                 {"scalar", r.energy.scalar},
                 {"sum", r.energy.sum()}};
  j["gauge_sanity"] = r.gauge_sanity;
  if (include_history) j["residual_history"] = r.residual_history;
  return j;
}

std::string_view to_string(StepRule r) { return r == StepRule::gradient ? "gradient" : "gauss-newton"; }

bool parse_step_rule(std::string_view s, StepRule& out) {
  if (s == "gradient") {
    out = StepRule::gradient;
    return true;
  }
  if (s == "gauss-newton") {
    out = StepRule::gauss_newton;
    return true;
  }
  return false;
}

}  // namespace spsw
