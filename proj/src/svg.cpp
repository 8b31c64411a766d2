#include "parafoil/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace parafoil::svg {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  if (std::abs(v) < 1e-12) v = 0.0;
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double nice_step(double span, int target_ticks) {
  const double raw = span / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double nice = norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0;
  return nice * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-9) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.04 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

}  // namespace

std::string render(const Plot& plot, int width, int height) {
  const double left = 70, right = 20, top = 40, bottom = 55;
  double pw = width - left - right;
  double ph = height - top - bottom;

  Range xr, yr;
  for (const Series& s : plot.series)
    for (const auto& [x, y] : s.points) {
      xr.add(x);
      yr.add(y);
    }
  for (const Region& r : plot.regions) {
    xr.add(r.x0);
    xr.add(r.x1);
    yr.add(r.y0);
    yr.add(r.y1);
  }
  xr.finish();
  yr.finish();

  double ox = left, oy = top;
  if (plot.equal_aspect) {
    const double scale = std::min(pw / (xr.hi - xr.lo), ph / (yr.hi - yr.lo));
    const double used_w = scale * (xr.hi - xr.lo), used_h = scale * (yr.hi - yr.lo);
    ox += 0.5 * (pw - used_w);
    oy += 0.5 * (ph - used_h);
    pw = used_w;
    ph = used_h;
  }
  auto sx = [&](double x) { return ox + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return oy + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(width / 2.0) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         escape(plot.title) + "</text>\n";

  for (const Region& r : plot.regions) {
    const double x0 = sx(std::min(r.x0, r.x1)), x1 = sx(std::max(r.x0, r.x1));
    const double y0 = sy(std::max(r.y0, r.y1)), y1 = sy(std::min(r.y0, r.y1));
    out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(x1 - x0) + "\" height=\"" + num(y1 - y0) +
           "\" fill=\"" + r.fill + "\" fill-opacity=\"0.45\" stroke=\"" + r.fill + "\"><title>" + escape(r.label) +
           "</title></rect>\n";
  }

  // Axes and ticks.
  out += "<rect x=\"" + num(ox) + "\" y=\"" + num(oy) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  auto ticks = [&](const Range& r, bool horizontal) {
    const double step = nice_step(r.hi - r.lo, 6);
    for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-9 * step; v += step) {
      if (horizontal) {
        const double x = sx(v);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(oy + ph) + "\" x2=\"" + num(x) + "\" y2=\"" + num(oy + ph + 5) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(oy + ph + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(v) + "</text>\n";
      } else {
        const double y = sy(v);
        out += "<line x1=\"" + num(ox - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(ox) + "\" y2=\"" + num(y) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(ox - 8) + "\" y=\"" + num(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(v) + "</text>\n";
      }
    }
  };
  ticks(xr, true);
  ticks(yr, false);
  out += "<text x=\"" + num(ox + pw / 2) + "\" y=\"" + num(height - 12.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(plot.x_label) + "</text>\n";
  out += "<text x=\"16\" y=\"" + num(oy + ph / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 " +
         num(oy + ph / 2) + ")\">" + escape(plot.y_label) + "</text>\n";

  for (const Series& s : plot.series) {
    if (s.points.empty()) continue;
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.6\"";
    if (s.dashed) out += " stroke-dasharray=\"6 4\"";
    out += " points=\"";
    for (const auto& [x, y] : s.points) out += num(sx(x)) + "," + num(sy(y)) + " ";
    out += "\"/>\n";
  }

  double ly = oy + 14;
  for (const Series& s : plot.series) {
    if (s.label.empty()) continue;
    out += "<line x1=\"" + num(ox + pw - 150) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(ox + pw - 125) + "\" y2=\"" +
           num(ly - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") +
           "/>\n";
    out += "<text x=\"" + num(ox + pw - 120) + "\" y=\"" + num(ly) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
           escape(s.label) + "</text>\n";
    ly += 16;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace parafoil::svg
