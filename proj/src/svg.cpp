#include "qpol/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qpol {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 612.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 420.0;

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

// A tick spacing of the form {1, 2, 5} * 10^k that yields 4-8 ticks.
double nice_step(double span) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

}  // namespace

std::string render_svg_chart(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<SvgSeries>& series) {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const SvgSeries& s : series)
    for (const auto& [x, y] : s.points) {
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const auto to_px = [&](double x, double y) {
    const double px = kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft);
    const double py = kBottom - (y - y_min) / (y_max - y_min) * (kBottom - kTop);
    return std::pair{px, py};
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + num(kWidth) +
         " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" "
         "font-size=\"15\">" + title + "</text>\n";

  // axes
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" +
         num(kRight) + "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
         num(kLeft) + "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";

  const double x_step = nice_step(x_max - x_min);
  for (double t = std::ceil(x_min / x_step) * x_step; t <= x_max + 1e-9; t += x_step) {
    const auto [px, py] = to_px(t, y_min);
    out += "<line x1=\"" + num(px) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(px) +
           "\" y2=\"" + num(kBottom + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(px) + "\" y=\"" + num(kBottom + 18) +
           "\" text-anchor=\"middle\">" + num(t) + "</text>\n";
    (void)py;
  }
  const double y_step = nice_step(y_max - y_min);
  for (double t = std::ceil(y_min / y_step) * y_step; t <= y_max + 1e-9; t += y_step) {
    const auto [px, py] = to_px(x_min, t);
    out += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py) + "\" x2=\"" +
           num(kLeft) + "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py + 4) +
           "\" text-anchor=\"end\">" + num(t) + "</text>\n";
    (void)px;
  }
  out += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"" + num(kHeight - 16) +
         "\" text-anchor=\"middle\">" + x_label + "</text>\n";
  out += "<text x=\"16\" y=\"" + num((kTop + kBottom) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num((kTop + kBottom) / 2) + ")\">" + y_label + "</text>\n";

  // series and legend
  double legend_y = kTop + 8.0;
  for (const SvgSeries& s : series) {
    if (s.line) {
      std::string path;
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        const auto [px, py] = to_px(s.points[i].first, s.points[i].second);
        path += (i == 0 ? "M" : " L");
        path += num(px) + " " + num(py);
      }
      out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + s.color +
             "\" stroke-width=\"1.5\"/>\n";
    } else {
      for (const auto& [x, y] : s.points) {
        const auto [px, py] = to_px(x, y);
        out += "<circle cx=\"" + num(px) + "\" cy=\"" + num(py) +
               "\" r=\"3\" fill=\"" + s.color + "\"/>\n";
      }
    }
    out += "<rect x=\"" + num(kRight - 150) + "\" y=\"" + num(legend_y - 8) +
           "\" width=\"10\" height=\"10\" fill=\"" + s.color + "\"/>\n";
    out += "<text x=\"" + num(kRight - 136) + "\" y=\"" + num(legend_y + 1) + "\">" +
           s.label + "</text>\n";
    legend_y += 16.0;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace qpol
