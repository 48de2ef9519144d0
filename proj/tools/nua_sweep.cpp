#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nua/errors.hpp"
#include "nua/report.hpp"
#include "nua/sweep.hpp"

namespace {

// --m may be omitted (m = 1), given once (shared) or once per scenario.
std::vector<nua::Scenario> zip_scenarios(const std::vector<double>& K, const std::vector<double>& w,
                                         const std::vector<double>& m) {
  if (K.size() != w.size()) throw nua::ValidationError("--K and --w must be given the same number of times");
  if (!m.empty() && m.size() != 1 && m.size() != K.size())
    throw nua::ValidationError("--m must be given once or once per --K/--w pair");
  std::vector<nua::Scenario> out;
  for (std::size_t i = 0; i < K.size(); ++i) {
    const double mi = m.empty() ? 1.0 : m.size() == 1 ? m[0] : m[i];
    out.push_back({mi, w[i], K[i]});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Entanglement of a two-mode Bell state seen by a non-uniformly accelerated observer.\n"
      "Sweeps T0 for each (m, w, K) scenario and writes |q|, log-negativity N and mutual\n"
      "information I. Natural units, c = hbar = 1: m is the field mass, w the acceleration\n"
      "scale, K the mode wavenumber, nu = K/w."};

  nua::SweepConfig cfg;
  std::vector<double> K, w, m;
  std::string format = "csv";
  std::string plot;
  bool defaults = false;

  app.add_option("--K", K, "mode wavenumber K; repeat for more scenarios");
  app.add_option("--w", w, "acceleration scale w; one per --K");
  app.add_option("--m", m, "field mass m (default 1); once for all, or one per --K");
  app.add_flag("--defaults-fig12", defaults, "add the four scenarios (K, w) = (0.1,1) (0.3,1) (0.1,5) (0.3,5), m = 1");
  app.add_option("--t0-min", cfg.t0_min, "first T0")->capture_default_str();
  app.add_option("--t0-max", cfg.t0_max, "last T0")->capture_default_str();
  app.add_option("--steps", cfg.steps, "grid points, both ends included")->capture_default_str();
  app.add_option("--tail-tol", cfg.tail_tol, "discarded Fock weight |q|^{2(n_max+1)}")->capture_default_str();
  app.add_option("--spec-tol", cfg.spec_tol, "relative tolerance for Bessel evaluations")->capture_default_str();
  app.add_option("--out", cfg.output_path, "data file; CSV also writes <out>.manifest.json")->capture_default_str();
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--plot", plot, "write <stem>.N.svg, <stem>.I.svg or both")->check(CLI::IsMember({"N", "I", "both"}));
  app.add_flag("--compare-rindler", cfg.compare_rindler, "draw the uniform-acceleration asymptotes on plots");
  app.add_option("--threads", cfg.threads, "worker threads; output does not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--record-timing", cfg.record_timing, "put wall time in the manifest (output no longer byte-stable)");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.scenarios = zip_scenarios(K, w, m);
    if (defaults) {
      const auto d = nua::default_scenarios();
      cfg.scenarios.insert(cfg.scenarios.end(), d.begin(), d.end());
    }
    cfg.format = format == "json" ? nua::OutputFormat::json : nua::OutputFormat::csv;
    if (!plot.empty()) {
      static const std::map<std::string, nua::PlotSelection> sel = {
          {"N", nua::PlotSelection::negativity}, {"I", nua::PlotSelection::mutual_info}, {"both", nua::PlotSelection::both}};
      cfg.plot = sel.at(plot);
    }

    const nua::SweepResult result = nua::run_sweep(cfg);
    for (const auto& p : nua::write_outputs(result)) std::fprintf(stderr, "wrote %s\n", p.string().c_str());
    if (!result.failures.empty())
      std::fprintf(stderr, "%zu of %zu points failed; see the manifest\n", result.failures.size(), result.total_points());
    if (result.failed()) {
      std::fprintf(stderr, "run failed: more than 10%% of points failed\n");
      return 3;
    }
  } catch (const nua::ValidationError& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
