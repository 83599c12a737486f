// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "raterlens/common.hpp"
#include "raterlens/csv.hpp"

namespace raterlens::svg {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 160.0;  // room for the legend
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 48.0;

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range pad(double lo, double hi) {
  if (!(lo < hi)) {  // degenerate or empty data
    const double c = std::isfinite(lo) ? lo : 0.0;
    return {c - 1.0, c + 1.0};
  }
  const double margin = 0.05 * (hi - lo);
  return {lo - margin, hi + margin};
}

// Short fixed-precision tick label; trailing zeros trimmed.
std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

void write_chart(const std::string& path, const std::string& title,
                 const std::string& x_label, const std::string& y_label,
                 const std::vector<Series>& series) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const Series& s : series) {
    for (const auto& p : s.points) {
      xmin = std::min(xmin, p[0]);
      xmax = std::max(xmax, p[0]);
      ymin = std::min(ymin, p[1]);
      ymax = std::max(ymax, p[1]);
    }
  }
  const Range xr = pad(xmin, xmax);
  const Range yr = pad(ymin, ymax);

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto sx = [&](double x) {
    return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  const auto sy = [&](double y) {
    return kMarginTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h;
  };
  const auto num = [](double v) { return csv::format_double(v); };

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("write-failed", "cannot open " + path + " for writing");
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\""
      << " font-family=\"sans-serif\" font-size=\"16\">" << title
      << "</text>\n";

  // Frame and ticks.
  out << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(kMarginTop)
      << "\" width=\"" << num(plot_w) << "\" height=\"" << num(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const double px = sx(fx);
    out << "<line x1=\"" << num(px) << "\" y1=\"" << num(kMarginTop + plot_h)
        << "\" x2=\"" << num(px) << "\" y2=\""
        << num(kMarginTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(px) << "\" y=\"" << num(kMarginTop + plot_h + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"11\">" << tick_label(fx) << "</text>\n";
    const double fy = yr.lo + (yr.hi - yr.lo) * i / kTicks;
    const double py = sy(fy);
    out << "<line x1=\"" << num(kMarginLeft - 5) << "\" y1=\"" << num(py)
        << "\" x2=\"" << num(kMarginLeft) << "\" y2=\"" << num(py)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(kMarginLeft - 8) << "\" y=\"" << num(py + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\""
        << " font-size=\"11\">" << tick_label(fy) << "</text>\n";
  }
  out << "<text x=\"" << num(kMarginLeft + plot_w / 2) << "\" y=\""
      << num(kHeight - 10) << "\" text-anchor=\"middle\""
      << " font-family=\"sans-serif\" font-size=\"13\">" << x_label
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << num(kMarginTop + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"13\" transform=\"rotate(-90 16 "
      << num(kMarginTop + plot_h / 2) << ")\">" << y_label << "</text>\n";

  for (const Series& s : series) {
    if (s.line && s.points.size() > 1) {
      out << "<polyline fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (i > 0) out << ' ';
        out << num(sx(s.points[i][0])) << ',' << num(sy(s.points[i][1]));
      }
      out << "\"/>\n";
    }
    if (s.marker == Marker::Circle) {
      for (const auto& p : s.points) {
        out << "<circle cx=\"" << num(sx(p[0])) << "\" cy=\"" << num(sy(p[1]))
            << "\" r=\"2.5\" fill=\"" << s.color << "\" fill-opacity=\"0.7\"/>\n";
      }
    } else if (s.marker == Marker::Square) {
      for (const auto& p : s.points) {
        out << "<rect x=\"" << num(sx(p[0]) - 2.5) << "\" y=\""
            << num(sy(p[1]) - 2.5) << "\" width=\"5\" height=\"5\" fill=\""
            << s.color << "\" fill-opacity=\"0.7\"/>\n";
      }
    }
  }

  // Legend.
  const double lx = kMarginLeft + plot_w + 16;
  double ly = kMarginTop + 10;
  for (const Series& s : series) {
    out << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly - 8)
        << "\" width=\"10\" height=\"10\" fill=\"" << s.color << "\"/>\n";
    out << "<text x=\"" << num(lx + 16) << "\" y=\"" << num(ly + 1)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name
        << "</text>\n";
    ly += 18;
  }
  out << "</svg>\n";
  if (!out) {
    throw IoError("write-failed", "failed writing " + path);
  }
}

}  // namespace raterlens::svg
