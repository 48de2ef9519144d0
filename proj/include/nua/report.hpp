#pragma once

// CSV, JSON and SVG emission for sweep results, plus the run manifest.
// Output bytes depend only on the result, never on the worker count.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "nua/sweep.hpp"

namespace nua {

enum class Quantity { negativity, mutual_info };

// Header scenario,m,w,K,nu,T0,q_abs,N,I; %.17g; missing points skipped.
void write_csv(const SweepResult& result, std::ostream& out);

// Config echo (without threads), version, per-scenario n_max, failures,
// discrepancy log, and wall time when recorded.
nlohmann::ordered_json manifest_json(const SweepResult& result);

// {"points": [...], "manifest": {...}}.
void write_json(const SweepResult& result, std::ostream& out);

// Line chart of N or I against T0. The first four curves are dotted, solid,
// dashed and dash-dotted; a curve with one point is drawn as a marker.
void write_svg(const SweepResult& result, Quantity which, std::ostream& out);

// Writes the data file, the CSV manifest sidecar <out>.manifest.json and any
// requested plots <stem>.N.svg / <stem>.I.svg. Returns the paths written.
// Throws std::runtime_error with the path on I/O failure.
std::vector<std::filesystem::path> write_outputs(const SweepResult& result);

}  // namespace nua
