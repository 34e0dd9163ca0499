// SPDX-License-Identifier: MIT

#include "fri/io.hpp"

#include "fri/meta.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace fri::io {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
constexpr int kPaletteSize = 6;

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

/// Fixed-point with a given number of decimals, '.' forced.
std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  for (char& ch : buf) {
    if (ch == '\0') break;
    if (ch == ',') ch = '.';
  }
  return buf;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string experiment_csv(const ExperimentResult& res) {
  std::string out =
      "series,sweep,crb_sampled,crb_continuous,mc_mse,mc_stderr,condition_number,"
      "ill_conditioned,failures\r\n";
  for (const ExperimentRow& row : res.rows) {
    out += row.series;
    out += ',';
    out += format_double(row.sweep);
    out += ',';
    out += format_double(row.crb_sampled);
    out += ',';
    out += format_double(row.crb_continuous);
    out += ',';
    out += format_double(row.mc_mse);
    out += ',';
    out += format_double(row.mc_stderr);
    out += ',';
    out += format_double(row.condition_number);
    out += ',';
    out += row.ill_conditioned ? '1' : '0';
    out += ',';
    out += std::to_string(row.failures);
    out += "\r\n";
  }
  return out;
}

std::string crb_sweep_csv(const std::vector<CrbSweepRow>& rows) {
  std::string out = "N,crb_sampled,crb_continuous,condition_number\r\n";
  for (const CrbSweepRow& row : rows) {
    out += std::to_string(row.N);
    out += ',';
    out += format_double(row.crb_sampled);
    out += ',';
    out += format_double(row.crb_continuous);
    out += ',';
    out += format_double(row.condition_number);
    out += "\r\n";
  }
  return out;
}

nlohmann::json run_manifest(const ExperimentResult& res) {
  nlohmann::json j;
  j["config_hash"] = res.config_hash;
  j["experiment"] = experiment_name(res.experiment);
  j["label"] = res.label;
  j["seed"] = res.seed;
  j["trials"] = res.trials;
  j["versions"] = {{"fri_lab", FRI_LAB_VERSION},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                 std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)}};
  j["runtime_seconds"] = res.runtime_seconds;
  return j;
}

nlohmann::json experiment_rows_json(const ExperimentResult& res) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ExperimentRow& row : res.rows) {
    rows.push_back({{"series", row.series},
                    {"sweep", row.sweep},
                    {"crb_sampled", row.crb_sampled},
                    {"crb_continuous", row.crb_continuous},
                    {"mc_mse", row.mc_mse},
                    {"mc_stderr", row.mc_stderr},
                    {"condition_number", row.condition_number},
                    {"ill_conditioned", row.ill_conditioned},
                    {"failures", row.failures}});
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw ConfigError("failed writing output file: " + path);
}

// ---- SVG ---------------------------------------------------------------

namespace {

struct Mapped {
  std::vector<std::vector<std::pair<double, double>>> segments;  // per series: split polylines
};

double map_value(double v, bool log_scale) { return log_scale ? std::log10(v) : v; }

bool drawable(double v, bool log_scale) {
  return std::isfinite(v) && (!log_scale || v > 0.0);
}

}  // namespace

std::string svg_line_plot(const PlotSpec& spec) {
  constexpr double kW = 800.0, kH = 520.0;
  constexpr double kLeft = 72.0, kRight = 784.0, kTop = 44.0, kBottom = 462.0;

  // Collect drawable points in axis coordinates.
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  std::vector<std::vector<std::vector<std::pair<double, double>>>> series_segments;
  for (const PlotSeries& s : spec.series) {
    std::vector<std::vector<std::pair<double, double>>> segments(1);
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!drawable(s.x[i], spec.log_x) || !drawable(s.y[i], spec.log_y)) {
        if (!segments.back().empty()) segments.emplace_back();
        continue;
      }
      const double px = map_value(s.x[i], spec.log_x);
      const double py = map_value(s.y[i], spec.log_y);
      segments.back().emplace_back(px, py);
      x_min = std::min(x_min, px);
      x_max = std::max(x_max, px);
      y_min = std::min(y_min, py);
      y_max = std::max(y_max, py);
    }
    series_segments.push_back(std::move(segments));
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
      << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"#ffffff\"/>\n"
      << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"15\" fill=\"#222\">" << xml_escape(spec.title) << "</text>\n";

  if (!(x_min <= x_max) || !(y_min <= y_max)) {
    svg << "<text x=\"" << kW / 2 << "\" y=\"" << kH / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
        << " fill=\"#666\">no drawable data</text>\n</svg>\n";
    return svg.str();
  }

  if (x_min == x_max) {
    x_min -= spec.log_x ? 1.0 : 0.5;
    x_max += spec.log_x ? 1.0 : 0.5;
  }
  if (y_min == y_max) {
    y_min -= spec.log_y ? 1.0 : 0.5;
    y_max += spec.log_y ? 1.0 : 0.5;
  }

  const auto to_px = [&](double v) {
    return kLeft + (v - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  const auto to_py = [&](double v) {
    return kBottom - (v - y_min) / (y_max - y_min) * (kBottom - kTop);
  };

  // Gridlines and tick labels.
  const auto axis_ticks = [](double lo, double hi, bool log_scale) {
    std::vector<std::pair<double, std::string>> ticks;  // (axis coord, label)
    if (log_scale) {
      const int d0 = static_cast<int>(std::ceil(lo - 1e-9));
      const int d1 = static_cast<int>(std::floor(hi + 1e-9));
      const int step = std::max(1, (d1 - d0) / 8 + ((d1 - d0) % 8 ? 1 : 0));
      for (int d = d0; d <= d1; d += step) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "1e%d", d);
        ticks.emplace_back(static_cast<double>(d), buf);
      }
    } else {
      const double raw = (hi - lo) / 5.0;
      const double mag = std::pow(10.0, std::floor(std::log10(raw)));
      const double r = raw / mag;
      const double step = (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
      const int decimals = std::clamp(static_cast<int>(std::ceil(-std::log10(step))), 0, 9);
      for (double v = std::ceil(lo / step - 1e-9) * step; v <= hi + 1e-9 * step; v += step)
        ticks.emplace_back(v, fixed(v, decimals));
    }
    return ticks;
  };

  for (const auto& [v, label] : axis_ticks(x_min, x_max, spec.log_x)) {
    const double px = to_px(v);
    svg << "<line x1=\"" << fixed(px, 2) << "\" y1=\"" << kTop << "\" x2=\"" << fixed(px, 2)
        << "\" y2=\"" << kBottom << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << fixed(px, 2) << "\" y=\"" << kBottom + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\""
        << " fill=\"#444\">" << label << "</text>\n";
  }
  for (const auto& [v, label] : axis_ticks(y_min, y_max, spec.log_y)) {
    const double py = to_py(v);
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << fixed(py, 2) << "\" x2=\"" << kRight
        << "\" y2=\"" << fixed(py, 2) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << kLeft - 6 << "\" y=\"" << fixed(py + 4, 2)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\""
        << " fill=\"#444\">" << label << "</text>\n";
  }

  // Frame and axis labels.
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kRight - kLeft
      << "\" height=\"" << kBottom - kTop << "\" fill=\"none\" stroke=\"#333\""
      << " stroke-width=\"1\"/>\n"
      << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kH - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\""
      << " fill=\"#222\">" << xml_escape(spec.x_label) << "</text>\n"
      << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\""
      << " transform=\"rotate(-90 18 " << (kTop + kBottom) / 2 << ")\">"
      << xml_escape(spec.y_label) << "</text>\n";

  // Series polylines and point markers.
  for (std::size_t si = 0; si < series_segments.size(); ++si) {
    const char* color = kPalette[si % kPaletteSize];
    std::size_t points = 0;
    for (const auto& seg : series_segments[si]) {
      points += seg.size();
      if (seg.size() >= 2) {
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.6\" points=\"";
        for (const auto& [vx, vy] : seg)
          svg << fixed(to_px(vx), 2) << ',' << fixed(to_py(vy), 2) << ' ';
        svg << "\"/>\n";
      }
    }
    if (points <= 100) {
      for (const auto& seg : series_segments[si])
        for (const auto& [vx, vy] : seg)
          svg << "<circle cx=\"" << fixed(to_px(vx), 2) << "\" cy=\"" << fixed(to_py(vy), 2)
              << "\" r=\"2.4\" fill=\"" << color << "\"/>\n";
    }
  }

  // Legend, top-right inside the frame.
  double ly = kTop + 16;
  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const char* color = kPalette[si % kPaletteSize];
    const double lx = kRight - 150;
    svg << "<line x1=\"" << lx << "\" y1=\"" << fixed(ly - 4, 2) << "\" x2=\"" << lx + 24
        << "\" y2=\"" << fixed(ly - 4, 2) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << lx + 30 << "\" y=\"" << fixed(ly, 2)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">"
        << xml_escape(spec.series[si].name) << "</text>\n";
    ly += 18;
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace fri::io
