#include "jetpinn/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace jetpinn {

namespace {

constexpr double kW = 640, kH = 480;
constexpr double kML = 70, kMR = 150, kMT = 30, kMB = 55;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct LogMap {
  double lo, hi, a, b;  // screen = a * log10(v) + b
  LogMap(double vlo, double vhi, double slo, double shi) {
    lo = std::log10(vlo);
    hi = std::log10(vhi);
    if (hi - lo < 1e-9) hi = lo + 1.0;
    a = (shi - slo) / (hi - lo);
    b = slo - a * lo;
  }
  double operator()(double v) const { return a * std::log10(v) + b; }
};

}  // namespace

void emit_plot(const std::vector<SweepRowResult>& rows, double reference_slope,
               const std::string& path) {
  std::map<int, std::vector<std::pair<double, double>>> series;  // M_L -> (x, err)
  double xmin = 1e300, xmax = 0, ymin = 1e300, ymax = 0;
  for (const auto& r : rows) {
    if (!std::isfinite(r.approx_error) || r.approx_error <= 0) continue;
    const double x = r.M_B + r.M_Gamma + r.M_I;
    series[r.M_L].emplace_back(x, r.approx_error);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, r.approx_error);
    ymax = std::max(ymax, r.approx_error);
  }
  if (series.empty()) throw std::invalid_argument("emit_plot: no finite data points");

  const LogMap X(xmin / 1.3, xmax * 1.3, kML, kW - kMR);
  const LogMap Y(ymin / 1.5, ymax * 1.5, kH - kMB, kMT);

  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("emit_plot: cannot open " + path);
  char buf[512];
  f << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
       "viewBox=\"0 0 640 480\">\n"
    << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";

  // axes
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n"
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                kML, kH - kMB, kW - kMR, kH - kMB, kML, kMT, kML, kH - kMB);
  f << buf;

  // decade ticks
  for (int e = static_cast<int>(std::floor(std::log10(xmin / 1.3)));
       e <= static_cast<int>(std::ceil(std::log10(xmax * 1.3))); ++e) {
    const double v = std::pow(10.0, e);
    const double sx = X(v);
    if (sx < kML - 1 || sx > kW - kMR + 1) continue;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ccc\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"middle\">1e%d"
                  "</text>\n",
                  sx, kMT, sx, kH - kMB, sx, kH - kMB + 16, e);
    f << buf;
  }
  for (int e = static_cast<int>(std::floor(std::log10(ymin / 1.5)));
       e <= static_cast<int>(std::ceil(std::log10(ymax * 1.5))); ++e) {
    const double v = std::pow(10.0, e);
    const double sy = Y(v);
    if (sy < kMT - 1 || sy > kH - kMB + 1) continue;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ccc\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\">1e%d</text>\n",
                  kML, sy, kW - kMR, sy, kML - 6, sy + 4, e);
    f << buf;
  }

  // reference slope through the data's corner
  {
    const double x0 = xmin, x1 = xmax;
    const double y0 = ymax;
    const double y1 = y0 * std::pow(x1 / x0, -reference_slope);
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\" "
                  "stroke-dasharray=\"6 4\"/>\n",
                  X(x0), Y(y0), X(x1), Y(y1));
    f << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">slope %.2f</text>\n", X(x1) + 6,
                  Y(y1), reference_slope);
    f << buf;
  }

  int ci = 0;
  double ly = kMT + 16;
  for (const auto& [ml, pts] : series) {
    const char* color = kColors[ci % 6];
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    std::string poly;
    for (const auto& [x, y] : sorted) {
      std::snprintf(buf, sizeof(buf),
                    "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"4\" fill=\"%s\"/>\n", X(x), Y(y), color);
      f << buf;
      std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", X(x), Y(y));
      poly += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"1\"/>\n",
                  poly.c_str(), color);
    f << buf;
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"4\" fill=\"%s\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">M_L = %d</text>\n",
                  kW - kMR + 16, ly - 4, color, kW - kMR + 26, ly, ml);
    f << buf;
    ly += 18;
    ++ci;
  }

  f << "<text x=\"" << (kML + (kW - kMR - kML) / 2)
    << "\" y=\"" << (kH - 12)
    << "\" font-size=\"13\" text-anchor=\"middle\">M_B + M_Gamma + M_I</text>\n";
  f << "<text x=\"16\" y=\"" << (kMT + (kH - kMB - kMT) / 2)
    << "\" font-size=\"13\" transform=\"rotate(-90 16 "
    << (kMT + (kH - kMB - kMT) / 2) << ")\" text-anchor=\"middle\">approx. error</text>\n";
  f << "</svg>\n";
}

}  // namespace jetpinn
