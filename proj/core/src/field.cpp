#include "spsw/field.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>

namespace spsw {
namespace {

// Fourth-order central stencils on offsets -3..3, unscaled; the scale is h^-n.
constexpr std::array<std::array<double, 7>, 4> kStencil = {{
    {0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0},
    {0.0, 1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12, 0.0},
    {0.0, -1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12, 0.0},
    {1.0 / 8, -8.0 / 8, 13.0 / 8, 0.0, -13.0 / 8, 8.0 / 8, -1.0 / 8},
}};

std::vector<Jet> fd_jets(const TensorField& field, const Point& x, int order, double h) {
  const int k = std::min(order, kMaxFdOrder);
  const int n = field.components();
  std::vector<std::optional<std::vector<double>>> cache(7 * 7 * 7);
  auto sample = [&](int i, int j, int l) -> const std::vector<double>& {
    auto& slot = cache[(i * 7 + j) * 7 + l];
    if (!slot) {
      const JetPoint p = {Jet::constant(x[0] + (i - 3) * h, 0), Jet::constant(x[1] + (j - 3) * h, 0),
                          Jet::constant(x[2] + (l - 3) * h, 0)};
      const auto vals = field(p);
      std::vector<double> out(vals.size());
      std::transform(vals.begin(), vals.end(), out.begin(), [](const Jet& v) { return v.value(); });
      slot = std::move(out);
    }
    return *slot;
  };

  std::vector<Jet> out(n, Jet::constant(0.0, k));
  std::vector<double> acc(n);
  const double fact[] = {1.0, 1.0, 2.0, 6.0};
  for (int a = 0; a <= k; ++a)
    for (int b = 0; a + b <= k; ++b)
      for (int c = 0; a + b + c <= k; ++c) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int i = 0; i < 7; ++i) {
          if (kStencil[a][i] == 0.0) continue;
          for (int j = 0; j < 7; ++j) {
            if (kStencil[b][j] == 0.0) continue;
            for (int l = 0; l < 7; ++l) {
              if (kStencil[c][l] == 0.0) continue;
              const double w = kStencil[a][i] * kStencil[b][j] * kStencil[c][l];
              const auto& v = sample(i, j, l);
              for (int q = 0; q < n; ++q) acc[q] += w * v[q];
            }
          }
        }
        const double scale = std::pow(h, -(a + b + c)) / (fact[a] * fact[b] * fact[c]);
        for (int q = 0; q < n; ++q) out[q].coeff_ref(a, b, c) = acc[q] * scale;
      }
  return out;
}

}  // namespace

std::string_view to_string(BackendKind k) { return k == BackendKind::ad ? "ad" : "fd"; }

bool parse_backend(std::string_view s, BackendKind& out) {
  if (s == "ad") {
    out = BackendKind::ad;
    return true;
  }
  if (s == "fd") {
    out = BackendKind::fd;
    return true;
  }
  return false;
}

JetPoint seed(const Point& x, int order) {
  return {Jet::variable(x[0], 0, order), Jet::variable(x[1], 1, order), Jet::variable(x[2], 2, order)};
}

std::vector<Jet> TensorField::jets(const Point& x, int order, const Backend& backend) const {
  if (backend.kind == BackendKind::fd) return fd_jets(*this, x, order, backend.fd_step);
  auto out = eval_(seed(x, order));
  for (auto& j : out) j = j.truncated(order);
  return out;
}

std::vector<double> TensorField::values(const Point& x) const {
  const JetPoint p = {Jet::constant(x[0], 0), Jet::constant(x[1], 0), Jet::constant(x[2], 0)};
  const auto v = eval_(p);
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](const Jet& j) { return j.value(); });
  return out;
}

TensorField operator+(const TensorField& a, const TensorField& b) {
  if (a.components() != b.components()) throw std::invalid_argument("field sum: component count mismatch");
  return TensorField(a.components(), [a, b](const JetPoint& x) {
    auto u = a(x);
    const auto v = b(x);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += v[i];
    return u;
  });
}

TensorField scaled(const TensorField& a, double s) {
  return TensorField(a.components(), [a, s](const JetPoint& x) {
    auto u = a(x);
    for (auto& v : u) v *= s;
    return u;
  });
}

TensorField zero_field(int components) { return constant_field(std::vector<double>(components, 0.0)); }

TensorField constant_field(std::vector<double> values) {
  const int n = static_cast<int>(values.size());
  return TensorField(n, [values](const JetPoint&) {
    std::vector<Jet> out;
    out.reserve(values.size());
    for (double v : values) out.emplace_back(v);
    return out;
  });
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  return dist(rng);
}

namespace {

struct Monomial {
  int a, b, c;
};

std::vector<Monomial> monomials(int degree) {
  std::vector<Monomial> out;
  for (int d = 0; d <= degree; ++d)
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  return out;
}

Jet ipow(const Jet& x, int n) {
  Jet r(1.0);
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

std::vector<Jet> eval_polynomial(const JetPoint& x, const Point& center, const std::vector<Monomial>& mono,
                                 const std::vector<double>& coeffs, int components) {
  const Jet dx = x[0] - center[0], dy = x[1] - center[1], dz = x[2] - center[2];
  std::vector<Jet> terms;
  terms.reserve(mono.size());
  for (const auto& m : mono) terms.push_back(ipow(dx, m.a) * ipow(dy, m.b) * ipow(dz, m.c));
  std::vector<Jet> out(components, Jet(0.0));
  for (int q = 0; q < components; ++q)
    for (std::size_t t = 0; t < mono.size(); ++t) out[q] += terms[t] * coeffs[q * mono.size() + t];
  return out;
}

}  // namespace

TensorField random_polynomial_field(std::mt19937_64& rng, int components, int degree, double amplitude,
                                    const Point& center) {
  auto mono = monomials(degree);
  std::vector<double> coeffs(components * mono.size());
  for (auto& c : coeffs) c = uniform(rng, -amplitude, amplitude);
  return TensorField(components, [mono, coeffs, components, center](const JetPoint& x) {
    return eval_polynomial(x, center, mono, coeffs, components);
  });
}

TensorField random_bump_field(std::mt19937_64& rng, int components, int degree, double amplitude,
                              const Point& center, double radius) {
  auto mono = monomials(degree);
  std::vector<double> coeffs(components * mono.size());
  for (auto& c : coeffs) c = uniform(rng, -amplitude, amplitude);
  return TensorField(components, [mono, coeffs, components, center, radius](const JetPoint& x) {
    Jet r2(0.0);
    for (int i = 0; i < 3; ++i) {
      const Jet d = (x[i] - center[i]) / radius;
      r2 += d * d;
    }
    auto out = eval_polynomial(x, center, mono, coeffs, components);
    if (r2.value() >= 1.0) {
      for (auto& v : out) v *= 0.0;
      return out;
    }
    const Jet bump = exp(1.0 - 1.0 / (1.0 - r2));
    for (auto& v : out) v *= bump;
    return out;
  });
}

TensorField random_trig_field(std::mt19937_64& rng, int components, int kmax, double amplitude) {
  struct Mode {
    int k[3];
    std::vector<double> cos_c, sin_c;
  };
  std::vector<Mode> modes;
  for (int i = -kmax; i <= kmax; ++i)
    for (int j = -kmax; j <= kmax; ++j)
      for (int l = -kmax; l <= kmax; ++l) {
        Mode m{{i, j, l}, std::vector<double>(components), std::vector<double>(components)};
        for (int q = 0; q < components; ++q) {
          m.cos_c[q] = uniform(rng, -amplitude, amplitude);
          m.sin_c[q] = (i == 0 && j == 0 && l == 0) ? 0.0 : uniform(rng, -amplitude, amplitude);
        }
        modes.push_back(std::move(m));
      }
  const double norm = 1.0 / static_cast<double>(modes.size());
  return TensorField(components, [modes, components, norm](const JetPoint& x) {
    std::vector<Jet> out(components, Jet(0.0));
    for (const auto& m : modes) {
      const Jet phase = x[0] * m.k[0] + x[1] * m.k[1] + x[2] * m.k[2];
      const Jet c = cos(phase), s = sin(phase);
      for (int q = 0; q < components; ++q) out[q] += (c * m.cos_c[q] + s * m.sin_c[q]) * norm;
    }
    return out;
  });
}

}  // namespace spsw
