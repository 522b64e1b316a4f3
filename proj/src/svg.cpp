#include "drss/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string_view>

#include "drss/errors.hpp"

namespace drss {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;
constexpr int kTicks = 5;

constexpr std::string_view kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                         "#9467bd", "#ff7f0e", "#8c564b"};

// Pixel coordinates: two decimals is plenty and keeps files small.
std::string px(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::fixed, 2);
  return std::string(buf, ptr);
}

// Tick labels: six significant digits, shortest form.
std::string tick_label(double v) {
  char buf[40];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, ptr);
}

std::string escape_text(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  double scale(double v, double out_lo, double out_hi) const {
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

Range data_range(const std::vector<ChartSeries>& series, bool use_x) {
  bool any = false;
  double lo = 0.0, hi = 0.0;
  for (const ChartSeries& s : series) {
    for (double v : use_x ? s.x : s.y) {
      if (!std::isfinite(v)) throw IoError("chart value is not finite");
      if (!any) {
        lo = hi = v;
        any = true;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (!any) throw IoError("chart has no data points");
  if (lo == hi) {
    // Flat series: pad so the line sits mid-chart.
    lo -= lo == 0.0 ? 1.0 : std::abs(lo) * 0.5;
    hi += hi == 0.0 ? 1.0 : std::abs(hi) * 0.5;
  }
  return Range{lo, hi};
}

}  // namespace

std::string LineChart::to_svg() const {
  for (const ChartSeries& s : series) {
    if (s.x.size() != s.y.size()) {
      throw IoError("chart series '" + s.label + "' has mismatched x/y sizes");
    }
  }
  const Range xr = data_range(series, true);
  const Range yr = data_range(series, false);
  const double plot_left = kLeft;
  const double plot_right = kWidth - kRight;
  const double plot_top = kTop;
  const double plot_bottom = kHeight - kBottom;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) +
         "\" height=\"" + px(kHeight) + "\" viewBox=\"0 0 " + px(kWidth) +
         " " + px(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + px(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">" +
         escape_text(title) + "</text>\n";

  // Axes.
  svg += "<line x1=\"" + px(plot_left) + "\" y1=\"" + px(plot_bottom) +
         "\" x2=\"" + px(plot_right) + "\" y2=\"" + px(plot_bottom) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + px(plot_left) + "\" y1=\"" + px(plot_top) +
         "\" x2=\"" + px(plot_left) + "\" y2=\"" + px(plot_bottom) +
         "\" stroke=\"black\"/>\n";

  // Ticks, grid lines and labels.
  for (int i = 0; i < kTicks; ++i) {
    const double f = double(i) / (kTicks - 1);
    const double xv = xr.lo + f * (xr.hi - xr.lo);
    const double yv = yr.lo + f * (yr.hi - yr.lo);
    const double xp = xr.scale(xv, plot_left, plot_right);
    const double yp = yr.scale(yv, plot_bottom, plot_top);
    svg += "<line x1=\"" + px(xp) + "\" y1=\"" + px(plot_bottom) + "\" x2=\"" +
           px(xp) + "\" y2=\"" + px(plot_bottom + 5) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + px(xp) + "\" y=\"" + px(plot_bottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           tick_label(xv) + "</text>\n";
    svg += "<line x1=\"" + px(plot_left - 5) + "\" y1=\"" + px(yp) +
           "\" x2=\"" + px(plot_left) + "\" y2=\"" + px(yp) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + px(plot_left) + "\" y1=\"" + px(yp) + "\" x2=\"" +
           px(plot_right) + "\" y2=\"" + px(yp) +
           "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + px(plot_left - 8) + "\" y=\"" + px(yp + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           tick_label(yv) + "</text>\n";
  }

  // Axis labels.
  svg += "<text x=\"" + px((plot_left + plot_right) / 2) + "\" y=\"" +
         px(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" +
         escape_text(x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + px((plot_top + plot_bottom) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 16 " +
         px((plot_top + plot_bottom) / 2) + ")\">" +
         escape_text(y_label) + "</text>\n";

  // Series polylines with point markers.
  for (std::size_t s = 0; s < series.size(); ++s) {
    const std::string_view color =
        kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    std::string points;
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      const double xp = xr.scale(series[s].x[i], plot_left, plot_right);
      const double yp = yr.scale(series[s].y[i], plot_bottom, plot_top);
      if (!points.empty()) points += ' ';
      points += px(xp) + "," + px(yp);
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      const double xp = xr.scale(series[s].x[i], plot_left, plot_right);
      const double yp = yr.scale(series[s].y[i], plot_bottom, plot_top);
      svg += "<circle cx=\"" + px(xp) + "\" cy=\"" + px(yp) +
             "\" r=\"3\" fill=\"" + std::string(color) + "\"/>\n";
    }
  }

  // Legend, top-right inside the plot area.
  for (std::size_t s = 0; s < series.size(); ++s) {
    const std::string_view color =
        kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    const double ly = plot_top + 14 + double(s) * 18;
    svg += "<line x1=\"" + px(plot_right - 150) + "\" y1=\"" + px(ly) +
           "\" x2=\"" + px(plot_right - 120) + "\" y2=\"" + px(ly) +
           "\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + px(plot_right - 112) + "\" y=\"" + px(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_text(series[s].label) + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace drss
