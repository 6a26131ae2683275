#include "spsw/jet.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <vector>

namespace spsw {
namespace {

struct MultiIndex {
  int a, b, c;
  int degree() const { return a + b + c; }
};

struct Product {
  int lhs, rhs, out;
};

// Graded ordering of all multi-indices up to kMaxJetOrder plus product tables
// for every truncation order.
struct Tables {
  std::vector<MultiIndex> index;
  int lookup[kMaxJetOrder + 1][kMaxJetOrder + 1][kMaxJetOrder + 1];
  std::vector<Product> products[kMaxJetOrder + 1];
  double factorial[2 * kMaxJetOrder + 2];

  Tables() {
    for (auto& p : lookup)
      for (auto& q : p)
        for (int& r : q) r = -1;
    for (int d = 0; d <= kMaxJetOrder; ++d)
      for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b) {
          const int c = d - a - b;
          lookup[a][b][c] = static_cast<int>(index.size());
          index.push_back({a, b, c});
        }
    for (int k = 0; k <= kMaxJetOrder; ++k) {
      const int n = Jet::coeff_count(k);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const auto& x = index[i];
          const auto& y = index[j];
          if (x.degree() + y.degree() > k) continue;
          products[k].push_back({i, j, lookup[x.a + y.a][x.b + y.b][x.c + y.c]});
        }
    }
    factorial[0] = 1.0;
    for (int i = 1; i < 2 * kMaxJetOrder + 2; ++i) factorial[i] = factorial[i - 1] * i;
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

Jet Jet::constant(double value, int order) {
  assert(order >= 0 && order <= kMaxJetOrder);
  Jet j(value);
  j.order_ = order;
  return j;
}

Jet Jet::variable(double x0, int axis, int order) {
  Jet j = constant(x0, order);
  if (order >= 1) {
    const int a = axis == 0, b = axis == 1, c = axis == 2;
    j.c_[tables().lookup[a][b][c]] = 1.0;
  }
  return j;
}

double Jet::coeff(int a, int b, int c) const {
  if (a < 0 || b < 0 || c < 0 || a + b + c > order_) return 0.0;
  return c_[tables().lookup[a][b][c]];
}

double& Jet::coeff_ref(int a, int b, int c) {
  assert(a >= 0 && b >= 0 && c >= 0 && a + b + c <= order_);
  return c_[tables().lookup[a][b][c]];
}

double Jet::partial(int a, int b, int c) const {
  const auto& f = tables().factorial;
  return coeff(a, b, c) * f[a] * f[b] * f[c];
}

Jet Jet::derivative(int axis) const {
  assert(order_ >= 1);
  const auto& t = tables();
  Jet r = constant(0.0, order_ - 1);
  const int n = coeff_count(order_ - 1);
  for (int i = 0; i < n; ++i) {
    MultiIndex m = t.index[i];
    int up = 0;
    if (axis == 0) up = ++m.a;
    if (axis == 1) up = ++m.b;
    if (axis == 2) up = ++m.c;
    r.c_[i] = up * c_[t.lookup[m.a][m.b][m.c]];
  }
  return r;
}

Jet Jet::truncated(int order) const {
  Jet r = *this;
  if (order >= order_) return r;
  r.order_ = order;
  std::fill(r.c_.begin() + coeff_count(order), r.c_.end(), 0.0);
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  const int n = coeff_count(order_);
  for (int i = 0; i < n; ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  const int n = coeff_count(order_);
  for (int i = 0; i < n; ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  const int n = coeff_count(order_);
  for (int i = 0; i < n; ++i) c_[i] *= s;
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  const int k = std::min(order_, o.order_);
  // Fast paths: either factor is a pure constant.
  bool lhs_const = true, rhs_const = true;
  const int n = coeff_count(k);
  for (int i = 1; i < n && (lhs_const || rhs_const); ++i) {
    if (c_[i] != 0.0) lhs_const = false;
    if (o.c_[i] != 0.0) rhs_const = false;
  }
  if (rhs_const) {
    const double s = o.c_[0];
    *this = truncated(k);
    return *this *= s;
  }
  if (lhs_const) {
    const double s = c_[0];
    *this = o.truncated(k);
    return *this *= s;
  }
  std::array<double, kMaxCoeffs> out{};
  for (const auto& p : tables().products[k]) out[p.out] += c_[p.lhs] * o.c_[p.rhs];
  c_ = out;
  order_ = k;
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  return r *= -1.0;
}

Jet Jet::compose(const std::array<double, kMaxJetOrder + 1>& derivs) const {
  // f(u0 + h) = sum_n f^(n)(u0)/n! h^n with h nilpotent beyond order_.
  Jet h = *this;
  h.c_[0] = 0.0;
  const auto& fact = tables().factorial;
  Jet result = constant(derivs[0], order_);
  Jet power = constant(1.0, order_);
  for (int n = 1; n <= order_; ++n) {
    power *= h;
    result += power * (derivs[n] / fact[n]);
  }
  return result;
}

Jet Jet::reciprocal() const {
  const double u = c_[0];
  std::array<double, kMaxJetOrder + 1> d{};
  double v = 1.0 / u;
  for (int n = 0; n <= kMaxJetOrder; ++n) {
    d[n] = v * tables().factorial[n] * ((n % 2) ? -1.0 : 1.0);
    v /= u;
  }
  return compose(d);
}

Jet pow(const Jet& x, double p) {
  const double u = x.value();
  std::array<double, kMaxJetOrder + 1> d{};
  double coeff = 1.0;
  for (int n = 0; n <= kMaxJetOrder; ++n) {
    d[n] = coeff * std::pow(u, p - n);
    coeff *= (p - n);
  }
  return x.compose(d);
}

Jet sqrt(const Jet& x) { return pow(x, 0.5); }

Jet exp(const Jet& x) {
  std::array<double, kMaxJetOrder + 1> d{};
  d.fill(std::exp(x.value()));
  return x.compose(d);
}

Jet log(const Jet& x) {
  const double u = x.value();
  std::array<double, kMaxJetOrder + 1> d{};
  d[0] = std::log(u);
  double v = 1.0 / u;
  double f = 1.0;
  for (int n = 1; n <= kMaxJetOrder; ++n) {
    d[n] = ((n % 2) ? 1.0 : -1.0) * f * v;
    f *= n;
    v /= u;
  }
  return x.compose(d);
}

Jet sin(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  std::array<double, kMaxJetOrder + 1> d{};
  const double cycle[4] = {s, c, -s, -c};
  for (int n = 0; n <= kMaxJetOrder; ++n) d[n] = cycle[n % 4];
  return x.compose(d);
}

Jet cos(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  std::array<double, kMaxJetOrder + 1> d{};
  const double cycle[4] = {c, -s, -c, s};
  for (int n = 0; n <= kMaxJetOrder; ++n) d[n] = cycle[n % 4];
  return x.compose(d);
}

Jet atan(const Jet& x) {
  // atan' = 1/(1+x^2); integrate the jet of the derivative along the series.
  const double u = x.value();
  Jet t = Jet::variable(u, 0, kMaxJetOrder);
  Jet deriv = 1.0 / (1.0 + t * t);
  std::array<double, kMaxJetOrder + 1> d{};
  d[0] = std::atan(u);
  for (int n = 1; n <= kMaxJetOrder; ++n) d[n] = deriv.partial(n - 1, 0, 0);
  return x.compose(d);
}

std::ostream& operator<<(std::ostream& os, const Jet& j) {
  os << "Jet(order=" << j.order() << ", value=" << j.value() << ")";
  return os;
}

}  // namespace spsw
