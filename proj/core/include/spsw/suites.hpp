#pragma once

// Verification suites and the torus solve, each producing a ReportDocument.
// The CLI and the acceptance runner both drive these.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "spsw/chart.hpp"
#include "spsw/field.hpp"
#include "spsw/quat.hpp"
#include "spsw/report.hpp"
#include "spsw/torus.hpp"

namespace spsw {

/// Invalid or inconsistent run configuration (exit status 2 in the CLI).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Suite { algebra, hyperbolic, weitzenboeck, product, torus, cotton };

/// Subcommand names: verify-algebra, verify-hyperbolic, ..., solve-torus, verify-cotton.
std::string_view to_string(Suite s);
bool parse_suite(std::string_view s, Suite& out);

enum class StartPreset { zero, phi_one, random };
std::string_view to_string(StartPreset s);
bool parse_start(std::string_view s, StartPreset& out);

struct RunConfig {
  Suite suite = Suite::algebra;
  std::optional<ChartKind> chart;           // suite default when empty
  std::optional<BackendKind> backend;       // suite default when empty
  double fd_step = 1e-3;
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;       // suite default when empty
  int grid = 16;
  int threads = 1;
  Normalization norm = Normalization::consistent();
  StartPreset start = StartPreset::phi_one;
  StepRule rule = StepRule::gauss_newton;
  int max_iterations = 40;
  double start_amplitude = 0.5;
  int scan_samples = 41;                    // last-block scan density per axis
  std::map<std::string, double> tolerances; // per check id

  double tol(const std::string& id, double fallback) const;
  nlohmann::json to_json() const;
};

/// Default sample count of a suite.
std::size_t default_samples(Suite s);

ReportDocument verify_algebra(const RunConfig& cfg);
ReportDocument verify_hyperbolic(const RunConfig& cfg);
ReportDocument verify_weitzenboeck(const RunConfig& cfg);
ReportDocument verify_product(const RunConfig& cfg);
ReportDocument solve_torus(const RunConfig& cfg);
ReportDocument verify_cotton(const RunConfig& cfg);

/// Dispatches on cfg.suite. Throws ConfigError on chart/suite mismatch.
ReportDocument run_suite(const RunConfig& cfg);

/// min |mu| over unit spinors: sqrt(3)/2 (consistent), sqrt(2) (literal).
double properness_constant(const Normalization& n);

}  // namespace spsw
