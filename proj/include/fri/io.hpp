// SPDX-License-Identifier: MIT
//
// Artifact formatting: RFC-4180 CSV tables, a dependency-free SVG line
// plotter, and the run manifest.  All numbers are rendered with
// std::to_chars (shortest round-trip, locale-independent, '.' decimal), so
// identical computations serialize to identical bytes.

#pragma once

#include "fri/simlab.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace fri::io {

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for specials.
std::string format_double(double v);

/// Uniform experiment table:
/// series,sweep,crb_sampled,crb_continuous,mc_mse,mc_stderr,condition_number,
/// ill_conditioned,failures -- CRLF line endings per RFC 4180.
std::string experiment_csv(const ExperimentResult& res);

/// Compact bound-sweep table emitted by the `crb` subcommand:
/// N,crb_sampled,crb_continuous,condition_number.
struct CrbSweepRow {
  int N = 0;
  double crb_sampled = 0.0;
  double crb_continuous = 0.0;
  double condition_number = 0.0;
};
std::string crb_sweep_csv(const std::vector<CrbSweepRow>& rows);

/// {config_hash, seed, trials, versions, runtime_seconds}.
nlohmann::json run_manifest(const ExperimentResult& res);

/// Experiment rows as JSON (same fields as the CSV columns).
nlohmann::json experiment_rows_json(const ExperimentResult& res);

void write_text_file(const std::string& path, const std::string& content);

// ---- SVG ---------------------------------------------------------------

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = true;
  std::vector<PlotSeries> series;
};

/// Self-contained 800x520 line plot.  Non-finite points (and non-positive
/// values on a log axis) split their polyline; series colors cycle through a
/// fixed palette and are listed in a legend.
std::string svg_line_plot(const PlotSpec& spec);

}  // namespace fri::io
