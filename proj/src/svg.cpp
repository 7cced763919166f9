#include "sddac/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sddac {

namespace {

constexpr int kW = 960, kH = 560;
constexpr int kMl = 70, kMr = 20, kMt = 40, kMb = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Round tick spacing to a 1/2/5 decade multiple covering roughly `target`
// intervals across `span`.
double nice_step(double span, int target) {
  const double raw = span / std::max(1, target);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (mag * m >= raw) return mag * m;
  return mag * 10.0;
}

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string line_plot_svg(const std::string& title, const std::string& xlabel,
                          const std::string& ylabel,
                          const std::vector<PlotSeries>& series, bool log_x) {
  // Collect plottable points (finite, and positive-x when log scaled).
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  bool any = false;
  for (const auto& s : series)
    for (const auto& [x, y] : s.pts) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (log_x && x <= 0.0) continue;
      const double xv = log_x ? std::log10(x) : x;
      xmin = std::min(xmin, xv);
      xmax = std::max(xmax, xv);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
      any = true;
    }
  if (!any) {
    xmin = 0; xmax = 1; ymin = 0; ymax = 1;
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
  xmin -= xpad; xmax += xpad;
  ymin -= ypad; ymax += ypad;

  const double pw = kW - kMl - kMr, ph = kH - kMt - kMb;
  auto px = [&](double xv) { return kMl + (xv - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double yv) { return kMt + (ymax - yv) / (ymax - ymin) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
    << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH
    << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"16\">"
    << esc(title) << "</text>\n";

  // Grid lines and tick labels.
  o << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  if (log_x) {
    const long long d0 = (long long)std::ceil(xmin);
    const long long d1 = (long long)std::floor(xmax);
    for (long long d = d0; d <= d1; ++d) {
      const double x = px((double)d);
      o << "<line x1=\"" << num(x) << "\" y1=\"" << kMt << "\" x2=\"" << num(x)
        << "\" y2=\"" << kMt + ph << "\" stroke=\"#ddd\"/>\n";
      o << "<text x=\"" << num(x) << "\" y=\"" << kMt + ph + 16
        << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
    }
  } else {
    const double step = nice_step(xmax - xmin, 8);
    for (double t = std::ceil(xmin / step) * step; t <= xmax + 1e-9 * step;
         t += step) {
      const double x = px(t);
      o << "<line x1=\"" << num(x) << "\" y1=\"" << kMt << "\" x2=\"" << num(x)
        << "\" y2=\"" << kMt + ph << "\" stroke=\"#ddd\"/>\n";
      o << "<text x=\"" << num(x) << "\" y=\"" << kMt + ph + 16
        << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
    }
  }
  const double ystep = nice_step(ymax - ymin, 8);
  for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-9 * ystep;
       t += ystep) {
    const double y = py(t);
    o << "<line x1=\"" << kMl << "\" y1=\"" << num(y) << "\" x2=\"" << kMl + pw
      << "\" y2=\"" << num(y) << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << kMl - 6 << "\" y=\"" << num(y + 4)
      << "\" text-anchor=\"end\">" << num(t) << "</text>\n";
  }
  o << "</g>\n";

  // Axes.
  o << "<rect x=\"" << kMl << "\" y=\"" << kMt << "\" width=\"" << num(pw)
    << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#333\"/>\n";
  o << "<text x=\"" << kMl + pw / 2 << "\" y=\"" << kH - 10
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"13\">"
    << esc(xlabel) << "</text>\n";
  o << "<text x=\"18\" y=\"" << kMt + ph / 2
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
       " transform=\"rotate(-90 18 "
    << kMt + ph / 2 << ")\">" << esc(ylabel) << "</text>\n";

  // Series polylines: break the line at non-plottable points.
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % (sizeof kPalette / sizeof *kPalette)];
    std::string seg;
    auto flush = [&]() {
      if (!seg.empty())
        o << "<polyline points=\"" << seg
          << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.2\"/>\n";
      seg.clear();
    };
    for (const auto& [x, y] : series[i].pts) {
      if (!std::isfinite(x) || !std::isfinite(y) || (log_x && x <= 0.0)) {
        flush();
        continue;
      }
      const double xv = log_x ? std::log10(x) : x;
      if (!seg.empty()) seg += ' ';
      seg += num(px(xv)) + ',' + num(py(y));
    }
    flush();
  }

  // Legend.
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % (sizeof kPalette / sizeof *kPalette)];
    const int y = kMt + 14 + 18 * (int)i;
    o << "<line x1=\"" << kMl + 12 << "\" y1=\"" << y << "\" x2=\""
      << kMl + 40 << "\" y2=\"" << y << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << kMl + 46 << "\" y=\"" << y + 4
      << "\" font-family=\"sans-serif\" font-size=\"12\">"
      << esc(series[i].label) << "</text>\n";
  }

  o << "</svg>\n";
  return o.str();
}

}  // namespace sddac
