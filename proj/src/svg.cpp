#include "warpft/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "warpft/errors.hpp"

namespace warpft {

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_polyline_svg(const std::vector<double>& x,
                                const std::vector<double>& y,
                                const PlotOptions& opt) {
  if (x.size() != y.size())
    throw ValidationError("plot: x and y lengths differ");
  if (x.empty()) throw ValidationError("plot: no data");

  // Collect plottable points, applying log scaling where requested.
  std::vector<double> px, py;
  px.reserve(x.size());
  py.reserve(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double a = x[i], b = y[i];
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    if (opt.log_x) {
      if (a <= 0) continue;
      a = std::log10(a);
    }
    if (opt.log_y) {
      if (b <= 0) continue;
      b = std::log10(b);
    }
    px.push_back(a);
    py.push_back(b);
  }
  if (px.empty()) throw ValidationError("plot: no plottable points");

  double x_min = px[0], x_max = px[0], y_min = py[0], y_max = py[0];
  for (std::size_t i = 1; i < px.size(); ++i) {
    x_min = std::min(x_min, px[i]);
    x_max = std::max(x_max, px[i]);
    y_min = std::min(y_min, py[i]);
    y_max = std::max(y_max, py[i]);
  }
  if (x_max == x_min) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  }

  const double ml = 64, mr = 16, mt = 32, mb = 44;
  const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;
  const auto sx = [&](double v) { return ml + (v - x_min) / (x_max - x_min) * pw; };
  const auto sy = [&](double v) { return mt + (y_max - v) / (y_max - y_min) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(opt.width) + "\" height=\"" +
         std::to_string(opt.height) + "\" viewBox=\"0 0 " +
         std::to_string(opt.width) + " " + std::to_string(opt.height) +
         "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" +
         fmt(pw) + "\" height=\"" + fmt(ph) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";

  out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (i) out += ' ';
    out += fmt(sx(px[i]), "%.2f");
    out += ',';
    out += fmt(sy(py[i]), "%.2f");
  }
  out += "\"/>\n";

  const char* x_prefix = opt.log_x ? "1e" : "";
  const char* y_prefix = opt.log_y ? "1e" : "";
  out += "<text x=\"" + fmt(ml) + "\" y=\"" + fmt(opt.height - mb + 16) +
         "\" font-size=\"11\" text-anchor=\"middle\">" + x_prefix +
         fmt(x_min, opt.log_x ? "%.3g" : "%.4g") + "</text>\n";
  out += "<text x=\"" + fmt(ml + pw) + "\" y=\"" + fmt(opt.height - mb + 16) +
         "\" font-size=\"11\" text-anchor=\"middle\">" + x_prefix +
         fmt(x_max, opt.log_x ? "%.3g" : "%.4g") + "</text>\n";
  out += "<text x=\"" + fmt(ml - 6) + "\" y=\"" + fmt(mt + ph) +
         "\" font-size=\"11\" text-anchor=\"end\">" + y_prefix +
         fmt(y_min, opt.log_y ? "%.3g" : "%.4g") + "</text>\n";
  out += "<text x=\"" + fmt(ml - 6) + "\" y=\"" + fmt(mt + 10) +
         "\" font-size=\"11\" text-anchor=\"end\">" + y_prefix +
         fmt(y_max, opt.log_y ? "%.3g" : "%.4g") + "</text>\n";

  if (!opt.title.empty())
    out += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(mt - 10) +
           "\" font-size=\"13\" text-anchor=\"middle\">" +
           xml_escape(opt.title) + "</text>\n";
  if (!opt.x_label.empty())
    out += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" +
           fmt(opt.height - 10) + "\" font-size=\"12\" text-anchor=\"middle\">" +
           xml_escape(opt.x_label) + "</text>\n";
  if (!opt.y_label.empty())
    out += "<text x=\"14\" y=\"" + fmt(mt + ph / 2) +
           "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
           fmt(mt + ph / 2) + ")\">" + xml_escape(opt.y_label) + "</text>\n";

  out += "</svg>\n";
  return out;
}

}  // namespace warpft
