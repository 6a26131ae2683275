#pragma once

// Closed-form tensor fields and the differentiation backends that turn them
// into local jets.

#include <array>
#include <functional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "spsw/jet.hpp"
#include "spsw/tensor.hpp"

namespace spsw {

using Point = std::array<double, 3>;
using JetPoint = std::array<Jet, 3>;

enum class BackendKind { ad, fd };

struct Backend {
  BackendKind kind = BackendKind::ad;
  double fd_step = 1e-3;

  static Backend ad() { return {BackendKind::ad, 1e-3}; }
  static Backend fd(double h = 1e-3) { return {BackendKind::fd, h}; }
};

std::string_view to_string(BackendKind k);
bool parse_backend(std::string_view s, BackendKind& out);

/// Highest jet order the finite-difference backend delivers.
inline constexpr int kMaxFdOrder = 3;

/// A smooth map from chart coordinates to a fixed number of real components.
///
/// The evaluator is written once against Jet arithmetic; the ad backend feeds
/// it identity seeds, the fd backend feeds it constants on a stencil.
class TensorField {
 public:
  using Evaluator = std::function<std::vector<Jet>(const JetPoint&)>;

  TensorField() = default;
  TensorField(int components, Evaluator eval) : n_(components), eval_(std::move(eval)) {}

  int components() const { return n_; }
  bool empty() const { return !eval_; }

  std::vector<Jet> operator()(const JetPoint& x) const { return eval_(x); }

  /// Component jets of the requested order at x.
  std::vector<Jet> jets(const Point& x, int order, const Backend& backend) const;

  std::vector<double> values(const Point& x) const;

 private:
  int n_ = 0;
  Evaluator eval_;
};

/// Identity seeds x_i + dx_i of the given order.
JetPoint seed(const Point& x, int order);

/// Sum of fields (equal component count).
TensorField operator+(const TensorField& a, const TensorField& b);
TensorField scaled(const TensorField& a, double s);
TensorField zero_field(int components);
TensorField constant_field(std::vector<double> values);

// ---- random test fields ----------------------------------------------------

/// Per-component random polynomial of total degree <= degree with coefficients
/// uniform in [-amplitude, amplitude], expanded around a center point.
TensorField random_polynomial_field(std::mt19937_64& rng, int components, int degree, double amplitude,
                                    const Point& center = {0.0, 0.0, 0.0});

/// Random polynomial times a smooth bump supported in the ball |x - c| < r.
TensorField random_bump_field(std::mt19937_64& rng, int components, int degree, double amplitude,
                              const Point& center, double radius);

/// Random band-limited trigonometric field on [0, 2 pi)^3 with wavenumbers
/// |k_i| <= kmax.
TensorField random_trig_field(std::mt19937_64& rng, int components, int kmax, double amplitude);

/// Uniform double in [lo, hi).
double uniform(std::mt19937_64& rng, double lo, double hi);
double standard_normal(std::mt19937_64& rng);

}  // namespace spsw
