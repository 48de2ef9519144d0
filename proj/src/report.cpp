#include "nua/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nua {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string full(double x) { return fmt("%.17g", x); }

const char* format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

Json plot_name(const std::optional<PlotSelection>& p) {
  if (!p) return nullptr;
  switch (*p) {
    case PlotSelection::negativity: return "N";
    case PlotSelection::mutual_info: return "I";
    case PlotSelection::both: return "both";
  }
  return nullptr;
}

Json scenario_json(const Scenario& s) {
  return {{"m", s.m}, {"w", s.w}, {"K", s.K}, {"nu", s.nu()}};
}

template <typename Fn>
void for_each_point(const SweepResult& result, Fn fn) {
  for (std::size_t s = 0; s < result.scenarios.size(); ++s)
    for (const auto& p : result.scenarios[s].points)
      if (p) fn(s, result.scenarios[s].scenario, *p);
}

double value_of(const EntanglementPoint& p, Quantity q) { return q == Quantity::negativity ? p.N : p.I; }
double value_of(const RindlerLimit& r, Quantity q) { return q == Quantity::negativity ? r.N : r.I; }

// 1, 2 or 5 times a power of ten, about span/5.
double tick_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

std::string curve_label(const Scenario& s) {
  return "K=" + fmt("%g", s.K) + ", w=" + fmt("%g", s.w) + (s.m != 1.0 ? ", m=" + fmt("%g", s.m) : "");
}

struct Style {
  const char* dash;
  const char* color;
};

Style curve_style(std::size_t i) {
  static const char* dashes[] = {"1.5,3", "", "8,5", "8,4,1.5,4"};
  static const char* colors[] = {"#000000", "#1f5fa8", "#b2331e", "#2f7d32", "#7a3e9d"};
  return {dashes[i % 4], colors[(i / 4) % 5]};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f.flush()) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void write_csv(const SweepResult& result, std::ostream& out) {
  out << "scenario,m,w,K,nu,T0,q_abs,N,I\n";
  for_each_point(result, [&](std::size_t s, const Scenario& sc, const EntanglementPoint& p) {
    out << s << ',' << full(sc.m) << ',' << full(sc.w) << ',' << full(sc.K) << ',' << full(sc.nu()) << ','
        << full(p.T0) << ',' << full(p.q_abs) << ',' << full(p.N) << ',' << full(p.I) << '\n';
  });
}

Json manifest_json(const SweepResult& result) {
  const SweepConfig& c = result.config;
  Json config = {
      {"scenarios", Json::array()},
      {"t0_min", c.t0_min},
      {"t0_max", c.t0_max},
      {"steps", c.steps},
      {"tail_tol", c.tail_tol},
      {"spec_tol", c.spec_tol},
      {"output_path", c.output_path},
      {"format", format_name(c.format)},
      {"plot", plot_name(c.plot)},
      {"compare_rindler", c.compare_rindler},
  };
  for (const auto& s : c.scenarios) config["scenarios"].push_back(scenario_json(s));

  Json scenarios = Json::array();
  for (std::size_t s = 0; s < result.scenarios.size(); ++s) {
    const ScenarioResult& r = result.scenarios[s];
    Json j = scenario_json(r.scenario);
    j["index"] = s;
    j["n_max_min"] = r.n_max_min;
    j["n_max_max"] = r.n_max_max;
    if (r.rindler) j["rindler"] = {{"q_abs", r.rindler->q_abs}, {"N", r.rindler->N}, {"I", r.rindler->I}};
    else j["rindler"] = nullptr;
    scenarios.push_back(std::move(j));
  }

  Json failures = Json::array();
  for (const auto& f : result.failures)
    failures.push_back({{"scenario", f.scenario}, {"step", f.step}, {"T0", f.T0}, {"error", f.what}});

  double max_dn = 0.0, max_di = 0.0, max_q_alt = 0.0;
  Json points = Json::array();
  for (const auto& d : result.discrepancies) {
    const double dn = d.n_closed_form - d.n_numeric;
    max_dn = std::max(max_dn, std::abs(dn));
    max_q_alt = std::max(max_q_alt, d.q_alternate_abs);
    Json j = {{"scenario", d.scenario}, {"T0", d.T0},           {"q_abs", d.q_abs},
              {"N_numeric", d.n_numeric}, {"N_closed_form", d.n_closed_form}, {"dN", dn},
              {"I_numeric", d.i_numeric}};
    if (d.i_closed_form) {
      const double di = *d.i_closed_form - d.i_numeric;
      if (d.q_abs >= 0.01) max_di = std::max(max_di, std::abs(di));
      j["I_closed_form"] = *d.i_closed_form;
      j["dI"] = di;
    } else {
      j["I_closed_form"] = nullptr;
      j["dI"] = nullptr;
    }
    j["q_alternate_abs"] = d.q_alternate_abs;
    points.push_back(std::move(j));
  }

  Json m = {
      {"artifact", "nua_sweep"},
      {"version", kArtifactVersion},
      {"status", result.failed() ? "failed" : "ok"},
      {"config", std::move(config)},
      {"points_total", result.total_points()},
      {"points_failed", result.failures.size()},
      {"scenarios", std::move(scenarios)},
      {"failures", std::move(failures)},
      {"discrepancy_log",
       {{"summary",
         {{"max_abs_dN", max_dn},
          {"max_abs_dI_q_ge_0.01", max_di},
          {"max_q_alternate_abs", max_q_alt},
          {"N_note", "printed log-negativity series vs partial-transpose trace norm; series gives 0 at q = 0"},
          {"I_note", "printed mutual-information series vs entropies of the truncated state"},
          {"q_note", "opposite c- sign in the q numerator; exceeds 1 at early T0"}}},
        {"points", std::move(points)}}},
  };
  if (result.wall_seconds) m["wall_seconds"] = *result.wall_seconds;
  return m;
}

void write_json(const SweepResult& result, std::ostream& out) {
  Json points = Json::array();
  for_each_point(result, [&](std::size_t s, const Scenario& sc, const EntanglementPoint& p) {
    points.push_back({{"scenario", s}, {"m", sc.m}, {"w", sc.w}, {"K", sc.K}, {"nu", sc.nu()},
                      {"T0", p.T0}, {"q_abs", p.q_abs}, {"N", p.N}, {"I", p.I}});
  });
  Json doc = {{"points", std::move(points)}, {"manifest", manifest_json(result)}};
  out << doc.dump(2) << '\n';
}

void write_svg(const SweepResult& result, Quantity which, std::ostream& out) {
  constexpr double W = 720, H = 480, left = 70, right = 200, top = 30, bottom = 55;
  const double pw = W - left - right, ph = H - top - bottom;
  const double x0 = result.config.t0_min, x1 = result.config.t0_max;

  double y0 = INFINITY, y1 = -INFINITY;
  for_each_point(result, [&](std::size_t, const Scenario&, const EntanglementPoint& p) {
    y0 = std::min(y0, value_of(p, which));
    y1 = std::max(y1, value_of(p, which));
  });
  if (result.config.compare_rindler) {
    for (const auto& s : result.scenarios) {
      if (!s.rindler) continue;
      y0 = std::min(y0, value_of(*s.rindler, which));
      y1 = std::max(y1, value_of(*s.rindler, which));
    }
  }
  if (!std::isfinite(y0)) y0 = 0.0, y1 = 1.0;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto px = [&](double x) { return fmt("%.2f", left + (x - x0) / (x1 - x0) * pw); };
  auto py = [&](double y) { return fmt("%.2f", top + (y1 - y) / (y1 - y0) * ph); };
  const char* name = which == Quantity::negativity ? "N" : "I";
  const char* title = which == Quantity::negativity ? "Logarithmic negativity" : "Mutual information";

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
      << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left + pw / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << title
      << " vs T0</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double xs = tick_step(x1 - x0);
  for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
    out << "<line x1=\"" << px(t) << "\" y1=\"" << top + ph << "\" x2=\"" << px(t) << "\" y2=\"" << top + ph + 5
        << "\" stroke=\"black\"/><text x=\"" << px(t) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
        << fmt("%g", std::abs(t) < 1e-9 * xs ? 0.0 : t) << "</text>\n";
  }
  const double ys = tick_step(y1 - y0);
  for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << left << "\" y2=\"" << py(t)
        << "\" stroke=\"black\"/><text x=\"" << left - 8 << "\" y=\"" << py(t)
        << "\" text-anchor=\"end\" dominant-baseline=\"middle\">" << fmt("%g", std::abs(t) < 1e-9 * ys ? 0.0 : t)
        << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">T0</text>\n";
  out << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << top + ph / 2 << ")\">" << name << " (bits)</text>\n";

  for (std::size_t s = 0; s < result.scenarios.size(); ++s) {
    const ScenarioResult& sr = result.scenarios[s];
    const Style st = curve_style(s);
    const std::string dash = *st.dash ? std::string(" stroke-dasharray=\"") + st.dash + "\"" : "";

    if (result.config.compare_rindler && sr.rindler) {
      const std::string y = py(value_of(*sr.rindler, which));
      out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + pw << "\" y2=\"" << y
          << "\" stroke=\"#999999\" stroke-width=\"0.8\"" << dash << "/>\n";
    }

    // Missing points split the polyline.
    std::vector<std::vector<const EntanglementPoint*>> runs(1);
    for (const auto& p : sr.points) {
      if (p) runs.back().push_back(&*p);
      else if (!runs.back().empty()) runs.emplace_back();
    }
    for (const auto& run : runs) {
      if (run.empty()) continue;
      if (run.size() == 1) {
        out << "<circle cx=\"" << px(run[0]->T0) << "\" cy=\"" << py(value_of(*run[0], which))
            << "\" r=\"3\" fill=\"" << st.color << "\"/>\n";
        continue;
      }
      out << "<polyline fill=\"none\" stroke=\"" << st.color << "\" stroke-width=\"1.6\" stroke-linecap=\"round\""
          << dash << " points=\"";
      for (std::size_t i = 0; i < run.size(); ++i)
        out << (i ? " " : "") << px(run[i]->T0) << ',' << py(value_of(*run[i], which));
      out << "\"/>\n";
    }

    const double ly = top + 12 + 20.0 * s;
    out << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 52 << "\" y2=\"" << ly
        << "\" stroke=\"" << st.color << "\" stroke-width=\"1.6\" stroke-linecap=\"round\"" << dash << "/>\n";
    out << "<text x=\"" << left + pw + 58 << "\" y=\"" << ly << "\" dominant-baseline=\"middle\">"
        << curve_label(sr.scenario) << "</text>\n";
  }
  out << "</svg>\n";
}

std::vector<std::filesystem::path> write_outputs(const SweepResult& result) {
  namespace fs = std::filesystem;
  const fs::path out = result.config.output_path;
  std::vector<fs::path> written;
  std::ostringstream data;
  if (result.config.format == OutputFormat::csv) {
    write_csv(result, data);
    write_file(out, data.str());
    written.push_back(out);
    const fs::path sidecar = out.string() + ".manifest.json";
    write_file(sidecar, manifest_json(result).dump(2) + "\n");
    written.push_back(sidecar);
  } else {
    write_json(result, data);
    write_file(out, data.str());
    written.push_back(out);
  }
  if (result.config.plot) {
    const PlotSelection sel = *result.config.plot;
    fs::path stem = out;
    stem.replace_extension();
    auto plot = [&](Quantity q, const char* suffix) {
      std::ostringstream svg;
      write_svg(result, q, svg);
      const fs::path p = stem.string() + suffix;
      write_file(p, svg.str());
      written.push_back(p);
    };
    if (sel != PlotSelection::mutual_info) plot(Quantity::negativity, ".N.svg");
    if (sel != PlotSelection::negativity) plot(Quantity::mutual_info, ".I.svg");
  }
  return written;
}

}  // namespace nua
