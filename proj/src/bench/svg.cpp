#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "stlsq/bench.hpp"

namespace stlsq::bench {

namespace {

constexpr double kWidth = 640, kHeight = 440;
constexpr double kLeft = 80, kRight = 190, kTop = 40, kBottom = 60;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string escape(std::string_view s) {
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

struct Point {
  double x, y;
};

std::pair<double, double> coords(const ConvergenceRecord& r, PlotAxes axes) {
  switch (axes) {
    case PlotAxes::ErrorVsParam: return {static_cast<double>(r.param), r.error};
    case PlotAxes::TimeVsParam: return {static_cast<double>(r.param), r.wall_time_s};
    case PlotAxes::ErrorVsTime: return {r.wall_time_s, r.error};
  }
  return {0, 0};
}

}  // namespace

PlotAxes default_axes(Experiment e) {
  switch (e) {
    case Experiment::PdeTiming: return PlotAxes::TimeVsParam;
    case Experiment::PdeErrorVsTime: return PlotAxes::ErrorVsTime;
    default: return PlotAxes::ErrorVsParam;
  }
}

std::string render_svg(const std::vector<ConvergenceRecord>& records, PlotAxes axes,
                       std::string_view title) {
  // Series keep first-appearance order; non-positive values cannot go on a log axis.
  std::vector<std::string> order;
  std::map<std::string, std::vector<Point>> series;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& r : records) {
    const auto [x, y] = coords(r, axes);
    if (!(x > 0 && y > 0) || !std::isfinite(x) || !std::isfinite(y)) continue;
    if (!series.count(r.method)) order.push_back(r.method);
    series[r.method].push_back({std::log10(x), std::log10(y)});
    xmin = std::min(xmin, std::log10(x));
    xmax = std::max(xmax, std::log10(x));
    ymin = std::min(ymin, std::log10(y));
    ymax = std::max(ymax, std::log10(y));
  }
  if (order.empty()) xmin = ymin = 0, xmax = ymax = 1;
  xmin = std::floor(xmin), ymin = std::floor(ymin);
  xmax = std::max(std::ceil(xmax), xmin + 1), ymax = std::max(std::ceil(ymax), ymin + 1);

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double lx) { return kLeft + (lx - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double ly) { return kTop + (ymax - ly) / (ymax - ymin) * ph; };

  const char* xlabel = axes == PlotAxes::ErrorVsTime ? "wall time [s]" : "K / steps";
  const char* ylabel = axes == PlotAxes::TimeVsParam ? "wall time [s]" : "error";

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(title) << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int xstep = std::max(1, static_cast<int>((xmax - xmin) / 8));
  for (int d = static_cast<int>(xmin); d <= static_cast<int>(xmax); d += xstep) {
    os << "<line x1=\"" << px(d) << "\" y1=\"" << kTop << "\" x2=\"" << px(d) << "\" y2=\""
       << kTop + ph << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << px(d) << "\" y=\"" << kTop + ph + 16
       << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  const int ystep = std::max(1, static_cast<int>((ymax - ymin) / 10));
  for (int d = static_cast<int>(ymin); d <= static_cast<int>(ymax); d += ystep) {
    os << "<line x1=\"" << kLeft << "\" y1=\"" << py(d) << "\" x2=\"" << kLeft + pw << "\" y2=\""
       << py(d) << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(d) + 4 << "\" text-anchor=\"end\">1e" << d
       << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 16
     << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  os << "<text transform=\"translate(18," << kTop + ph / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << ylabel << "</text>\n";

  for (std::size_t s = 0; s < order.size(); ++s) {
    const char* color = kColors[s % std::size(kColors)];
    auto pts = series[order[s]];
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x; });
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : pts) os << px(p.x) << ',' << py(p.y) << ' ';
    os << "\"/>\n";
    for (const auto& p : pts)
      os << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"2.5\" fill=\"" << color
         << "\"/>\n";
    const double ly = kTop + 14 + 18 * static_cast<double>(s);
    os << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\""
       << kLeft + pw + 32 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kLeft + pw + 38 << "\" y=\"" << ly << "\">" << escape(order[s])
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace stlsq::bench
