#include "nua/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <thread>

#include "nua/bogoliubov.hpp"
#include "nua/errors.hpp"

namespace nua {

namespace {

struct Slot {
  std::optional<PointEvaluation> value;
  std::string error;
};

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void SweepConfig::validate() const {
  if (scenarios.empty()) throw ValidationError("sweep: empty scenario list");
  for (const Scenario& s : scenarios) {
    if (!positive_finite(s.m) || !positive_finite(s.w) || !positive_finite(s.K))
      throw ValidationError("sweep: m, w and K must be positive and finite");
  }
  if (steps < 2) throw ValidationError("sweep: steps must be >= 2");
  if (!std::isfinite(t0_min) || !std::isfinite(t0_max) || !(t0_min < t0_max))
    throw ValidationError("sweep: need finite t0_min < t0_max");
  if (!positive_finite(tail_tol) || tail_tol >= 1.0) throw ValidationError("sweep: tail_tol must lie in (0, 1)");
  if (!positive_finite(spec_tol)) throw ValidationError("sweep: spec_tol must be positive");
  if (threads < 1) throw ValidationError("sweep: threads must be >= 1");
  if (output_path.empty()) throw ValidationError("sweep: output path is empty");
}

std::vector<Scenario> default_scenarios() {
  return {{1.0, 1.0, 0.1}, {1.0, 1.0, 0.3}, {1.0, 5.0, 0.1}, {1.0, 5.0, 0.3}};
}

std::vector<double> t0_grid(const SweepConfig& config) {
  std::vector<double> grid(config.steps);
  const double span = config.t0_max - config.t0_min;
  for (int i = 0; i < config.steps; ++i) grid[i] = config.t0_min + span * i / (config.steps - 1);
  grid.back() = config.t0_max;
  return grid;
}

RindlerLimit rindler_limit(double nu, double tail_tol) {
  RindlerLimit out;
  out.q_abs = asymptotic_q_magnitude(nu);
  const TruncatedDensityMatrix rho = build_rho_av_converged(out.q_abs, tail_tol);
  out.N = log_negativity(rho);
  out.I = mutual_information(rho);
  return out;
}

std::size_t SweepResult::total_points() const {
  std::size_t n = 0;
  for (const auto& s : scenarios) n += s.points.size();
  return n;
}

bool SweepResult::failed() const {
  return 10 * failures.size() > total_points();
}

PointEvaluation evaluate_point(const Scenario& scenario, double T0, double tail_tol, const SpecfunOptions& opts) {
  ModeSpec spec;
  spec.m = scenario.m;
  spec.w = scenario.w;
  spec.K = scenario.K;
  const double nu = scenario.nu();
  const FrequencyMatchCoeffs c = frequency_match(spec, T0, opts);
  const double q_abs = std::abs(q_from_coefficients(c.c_plus, c.c_minus, nu));
  const TruncatedDensityMatrix rho = build_rho_av_converged(q_abs, tail_tol);

  PointEvaluation out;
  out.n_max = rho.n_max;
  out.point = {T0, q_abs, log_negativity(rho), mutual_information(rho)};

  Discrepancy& d = out.discrepancy;
  d.T0 = T0;
  d.q_abs = q_abs;
  d.n_numeric = out.point.N;
  d.n_closed_form = log_negativity_closed_form(q_abs, rho.n_max);
  d.i_numeric = out.point.I;
  if (q_abs > 0.0) {
    const double i_cf = mutual_information_closed_form(q_abs, rho.n_max);
    if (std::isfinite(i_cf)) d.i_closed_form = i_cf;
  }
  d.q_alternate_abs = std::abs(q_alternate_sign(c.c_plus, c.c_minus, nu));
  return out;
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  const std::vector<double> grid = t0_grid(config);
  const std::size_t n_scen = config.scenarios.size();
  const std::size_t n_grid = grid.size();
  std::vector<Slot> slots(n_scen * n_grid);
  SpecfunOptions opts;
  opts.rel_tol = config.spec_tol;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < slots.size(); k = next++) {
      const std::size_t s = k / n_grid;
      try {
        slots[k].value = evaluate_point(config.scenarios[s], grid[k % n_grid], config.tail_tol, opts);
      } catch (const Error& e) {
        slots[k].error = e.what();
      }
    }
  };
  const int n_threads = static_cast<int>(std::min<std::size_t>(config.threads, slots.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepResult result;
  result.config = config;
  for (std::size_t s = 0; s < n_scen; ++s) {
    ScenarioResult sr;
    sr.scenario = config.scenarios[s];
    try {
      sr.rindler = rindler_limit(sr.scenario.nu(), config.tail_tol);
    } catch (const Error&) {
    }
    sr.points.resize(n_grid);
    bool any = false;
    for (std::size_t i = 0; i < n_grid; ++i) {
      Slot& slot = slots[s * n_grid + i];
      if (!slot.value) {
        result.failures.push_back({s, static_cast<int>(i), grid[i], slot.error});
        continue;
      }
      sr.points[i] = slot.value->point;
      const int n = slot.value->n_max;
      sr.n_max_min = any ? std::min(sr.n_max_min, n) : n;
      sr.n_max_max = any ? std::max(sr.n_max_max, n) : n;
      any = true;
      slot.value->discrepancy.scenario = s;
      result.discrepancies.push_back(slot.value->discrepancy);
    }
    result.scenarios.push_back(std::move(sr));
  }
  if (config.record_timing) {
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return result;
}

}  // namespace nua
