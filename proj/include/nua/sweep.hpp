#pragma once

// T0 sweeps over (m, w, K) scenarios: q from the frequency match, then N and
// I from the matrix paths. Points land in pre-indexed slots, so results do
// not depend on the worker count.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nua/entanglement.hpp"
#include "nua/specfun.hpp"

namespace nua {

inline constexpr const char* kArtifactVersion = "1.0.0";

struct Scenario {
  double m = 1.0;
  double w = 1.0;
  double K = 0.1;
  double nu() const { return K / w; }
};

enum class OutputFormat { csv, json };
enum class PlotSelection { negativity, mutual_info, both };

struct SweepConfig {
  std::vector<Scenario> scenarios;
  double t0_min = -8.0;
  double t0_max = 10.0;
  int steps = 200;
  double tail_tol = kDefaultTailTol;
  double spec_tol = 1e-10;  // SpecfunOptions::rel_tol
  std::string output_path = "sweep.csv";
  OutputFormat format = OutputFormat::csv;
  std::optional<PlotSelection> plot;
  bool compare_rindler = false;
  int threads = 1;
  bool record_timing = false;  // wall time breaks byte-determinism, so opt-in

  // Throws ValidationError.
  void validate() const;
};

// (K, w) = (0.1, 1), (0.3, 1), (0.1, 5), (0.3, 5) with m = 1.
std::vector<Scenario> default_scenarios();

// Uniform grid, both ends included.
std::vector<double> t0_grid(const SweepConfig& config);

struct PointFailure {
  std::size_t scenario = 0;
  int step = 0;
  double T0 = 0.0;
  std::string what;
};

// Closed-form vs numeric at one point. i_closed_form is absent at q = 0
// and wherever the series is not finite.
struct Discrepancy {
  std::size_t scenario = 0;
  double T0 = 0.0;
  double q_abs = 0.0;
  double n_numeric = 0.0;
  double n_closed_form = 0.0;
  double i_numeric = 0.0;
  std::optional<double> i_closed_form;
  double q_alternate_abs = 0.0;  // |q| from the opposite c- sign
};

// Values at the uniform-acceleration limit |q| = e^{-pi nu}.
struct RindlerLimit {
  double q_abs = 0.0;
  double N = 0.0;
  double I = 0.0;
};
RindlerLimit rindler_limit(double nu, double tail_tol = kDefaultTailTol);

struct ScenarioResult {
  Scenario scenario;
  std::vector<std::optional<EntanglementPoint>> points;  // one slot per grid step
  int n_max_min = 0;
  int n_max_max = 0;
  std::optional<RindlerLimit> rindler;  // absent if the limit itself fails
};

struct SweepResult {
  SweepConfig config;
  std::vector<ScenarioResult> scenarios;
  std::vector<PointFailure> failures;
  std::vector<Discrepancy> discrepancies;  // scenario-major, T0-minor
  std::optional<double> wall_seconds;

  std::size_t total_points() const;
  // More than 10% of points failed.
  bool failed() const;
};

struct PointEvaluation {
  EntanglementPoint point;
  int n_max = 0;
  Discrepancy discrepancy;
};

// One grid point. Throws nua::Error on special-function or truncation failure.
PointEvaluation evaluate_point(const Scenario& scenario, double T0, double tail_tol, const SpecfunOptions& opts);

// Validates first; per-point errors are recorded, not thrown.
SweepResult run_sweep(const SweepConfig& config);

}  // namespace nua
