#pragma once

// Spectral discretization of the SW system on the flat torus [0, 2 pi)^3 and a
// least-squares solver for it.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spsw/field.hpp"
#include "spsw/kernels.hpp"
#include "spsw/quat.hpp"

namespace spsw {

/// Component layouts on the grid.
inline constexpr int kConfigSlots = 13;   // a (9, row-major), f, sigma (3)
inline constexpr int kTangentSlots = 16;  // config slots followed by xi (3)
inline constexpr int kResidualSlots = 13; // curvature (9), dirac (f, sigma)

/// Uniform N^3 grid with FFT-based differentiation.
///
/// Derivatives zero the Nyquist mode, so each discrete derivative is exactly
/// skew-adjoint and the discrete operators inherit the adjointness relations of
/// the continuous ones.
class TorusGrid {
 public:
  explicit TorusGrid(int n, int threads = 1);
  ~TorusGrid();
  TorusGrid(const TorusGrid&) = delete;
  TorusGrid& operator=(const TorusGrid&) = delete;

  int n() const { return n_; }
  std::size_t points() const { return points_; }
  double spacing() const;
  double cell_volume() const;
  int threads() const { return threads_; }
  Point coordinate(std::size_t p) const;

  /// out = d/dx_axis in (one component of points() values).
  void derivative(const double* in, int axis, double* out) const;
  /// Removes modes with |k_i| > n/3 in any direction.
  void dealias(double* data) const;
  /// Applies (1 + |k|^2)^-1 in Fourier space.
  void smooth(double* data) const;
  /// Fraction of spectral energy in modes with |k_i| > n/3.
  double aliased_energy_fraction(const double* data) const;

 private:
  template <class Mult>
  void spectral_apply(const double* in, double* out, Mult&& mult) const;

  int n_;
  int threads_;
  std::size_t points_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

/// Component-major field storage: value of component q at point p is data[q * points + p].
struct GridField {
  int components = 0;
  std::size_t points = 0;
  std::vector<double> data;

  GridField() = default;
  GridField(int comps, std::size_t pts) : components(comps), points(pts), data(comps * pts, 0.0) {}

  double* component(int q) { return data.data() + q * points; }
  const double* component(int q) const { return data.data() + q * points; }
  double operator()(int q, std::size_t p) const { return data[q * points + p]; }
  double& operator()(int q, std::size_t p) { return data[q * points + p]; }
};

/// L^2 inner product with the cell volume weight.
double inner(const TorusGrid& g, const GridField& a, const GridField& b);
double norm_l2(const TorusGrid& g, const GridField& a);
double norm_inf(const GridField& a, int first, int count);
void axpy(double alpha, const GridField& x, GridField& y);

/// Samples a field (components must match) at the grid points; throws
/// std::runtime_error if its spectrum is not resolved below n/3.
GridField sample(const TorusGrid& g, const TensorField& f);
GridField sample_config(const TorusGrid& g, const TensorField& a, const TensorField& f, const TensorField& sigma);

/// Random band-limited configuration with wavenumbers |k_i| <= kmax and
/// sup-norm equal to `amplitude` per slot group.
GridField random_config(const TorusGrid& g, std::mt19937_64& rng, int kmax, double amplitude);

// ---- operators ------------------------------------------------------------------

/// (F - mu, -D Phi) at every grid point.
GridField sw_map(const TorusGrid& g, const GridField& config, const Normalization& n);
/// (F - mu, D Phi), the residual with the sign convention of the pointwise operators.
GridField assemble_residual(const TorusGrid& g, const GridField& config, const Normalization& n);
GridField dsw_apply(const TorusGrid& g, const GridField& config, const GridField& tangent, const Normalization& n);
GridField dsw_adjoint(const TorusGrid& g, const GridField& config, const GridField& residual,
                      const Normalization& n);
GridField gauge_apply(const TorusGrid& g, const GridField& config, const GridField& xi);
GridField gauge_adjoint_apply(const TorusGrid& g, const GridField& config, const GridField& tangent);
GridField big_L_apply(const TorusGrid& g, const GridField& config, const GridField& tangent16,
                      const Normalization& n);

/// Exterior derivative of a function and codifferential of a 1-form on the grid.
GridField grid_d(const TorusGrid& g, const GridField& f);
GridField grid_codiff(const TorusGrid& g, const GridField& s);

/// 1/2 ||sw_map||^2_L2 and its L^2 gradient.
double objective(const TorusGrid& g, const GridField& config, const Normalization& n);
GridField objective_gradient(const TorusGrid& g, const GridField& config, const Normalization& n);

struct EnergyTriple {
  double grad_phi = 0.0;  // ||nabla_A Phi||^2
  double moment = 0.0;    // ||mu(Phi)||^2
  double scalar = 0.0;    // 1/4 int scal |Phi|^2 (zero on the flat torus)
  double sum() const { return grad_phi + moment + scalar; }
};
EnergyTriple energy_identity(const TorusGrid& g, const GridField& config, const Normalization& n);

/// ||F_A||_L2 of the connection part alone.
double curvature_norm(const TorusGrid& g, const GridField& config);

// ---- solver ---------------------------------------------------------------------------

enum class StepRule { gradient, gauss_newton };

struct SolverOptions {
  StepRule rule = StepRule::gradient;
  int max_iterations = 2000;
  double tolerance = 1e-7;  // on the L^2 residual norm
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double initial_step = 0.1;
  double min_step = 1e-14;
  double cg_tolerance = 1e-8;
  int cg_max_iterations = 500;
  /// Levenberg-Marquardt shift damping * ||residual|| added to J*J.
  double damping = 0.01;
  /// Project gradients and steps onto the 2/3 band. Off: band-limited iterates admit no exact
  /// nonconstant flat connections, so the residual stalls near the truncation level.
  bool dealias_steps = false;
  Normalization norm = Normalization::consistent();
};

struct FlowReport {
  bool converged = false;
  std::string status;
  int iterations = 0;
  std::vector<double> residual_history;  // L^2 residual norm per accepted iterate
  double final_residual = 0.0;
  double phi_sup = 0.0;
  double curvature_l2 = 0.0;
  EnergyTriple energy;
  double gauge_sanity = 0.0;  // residual change under a small gauge motion
  GridField endpoint;
};

FlowReport flow_to_solution(const TorusGrid& g, const GridField& start, const SolverOptions& opt,
                            std::uint64_t gauge_seed = 0);

nlohmann::json to_json(const FlowReport& r, bool include_history = true);

std::string_view to_string(StepRule r);
bool parse_step_rule(std::string_view s, StepRule& out);

}  // namespace spsw
