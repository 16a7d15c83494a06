#include "mincost/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mincost/errors.hpp"

namespace mincost {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Range {
  double lo = 0, hi = 1;
  void grow(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad(double frac) {
    const double w = (hi - lo) * frac + 1e-12;
    lo -= w;
    hi += w;
  }
};

}  // namespace

std::string svg_line_chart(const std::vector<SvgSeries>& series, int width,
                           int height) {
  if (series.empty()) throw Error("svg chart: no series");
  Range rx{1e300, -1e300}, ry{1e300, -1e300};
  for (const auto& s : series) {
    if (s.xs.size() != s.ys.size()) throw Error("svg chart: ragged series");
    for (double x : s.xs) rx.grow(x);
    for (double y : s.ys) ry.grow(y);
  }
  rx.pad(0.05);
  ry.pad(0.08);

  const double ml = 56, mr = 16, mt = 16, mb = 40;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto px = [&](double x) { return ml + (x - rx.lo) / (rx.hi - rx.lo) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ry.lo) / (ry.hi - ry.lo) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes with 6 ticks each.
  svg << "<g stroke=\"#444\" stroke-width=\"1\" fill=\"none\">"
      << "<path d=\"M" << num(ml) << ' ' << num(mt) << " V" << num(mt + ph)
      << " H" << num(ml + pw) << "\"/></g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int t = 0; t <= 5; ++t) {
    const double xv = rx.lo + (rx.hi - rx.lo) * t / 5;
    const double yv = ry.lo + (ry.hi - ry.lo) * t / 5;
    svg << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << num(mt + ph)
        << "\" x2=\"" << num(px(xv)) << "\" y2=\"" << num(mt + ph + 4)
        << "\" stroke=\"#444\"/>"
        << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(mt + ph + 16)
        << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    svg << "<line x1=\"" << num(ml - 4) << "\" y1=\"" << num(py(yv))
        << "\" x2=\"" << num(ml) << "\" y2=\"" << num(py(yv))
        << "\" stroke=\"#444\"/>"
        << "<text x=\"" << num(ml - 7) << "\" y=\"" << num(py(yv) + 4)
        << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  svg << "</g>\n";

  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % 6];
    svg << "<path fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" d=\"";
    for (size_t i = 0; i < series[s].xs.size(); ++i)
      svg << (i == 0 ? 'M' : 'L') << num(px(series[s].xs[i])) << ' '
          << num(py(series[s].ys[i]));
    svg << "\"/>\n";
    svg << "<text font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
        << "\" x=\"" << num(ml + 10) << "\" y=\"" << num(mt + 16 + 16 * s)
        << "\">" << series[s].label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string svg_overlay(const SvgOverlay& scene, int width, int height) {
  Range rx{1e300, -1e300}, ry{1e300, -1e300};
  rx.grow(0);
  ry.grow(0);
  for (const auto& p : scene.points) {
    if (p.size() != 2) throw DimensionMismatch("svg overlay needs 2D points");
    rx.grow(p[0] - scene.ball_radius);
    rx.grow(p[0] + scene.ball_radius);
    ry.grow(p[1] - scene.ball_radius);
    ry.grow(p[1] + scene.ball_radius);
  }
  rx.pad(0.25);
  ry.pad(0.25);
  // Equal aspect.
  const double span = std::max(rx.hi - rx.lo, ry.hi - ry.lo);
  const double cx = 0.5 * (rx.lo + rx.hi), cy = 0.5 * (ry.lo + ry.hi);
  rx = {cx - span / 2, cx + span / 2};
  ry = {cy - span / 2, cy + span / 2};

  auto px = [&](double x) { return (x - rx.lo) / span * width; };
  auto py = [&](double y) { return height - (y - ry.lo) / span * height; };
  const double unit = width / span;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Boundary lines clipped by drawing far beyond the view box.
  for (const auto& b : scene.boundaries) {
    const Vec base = b.normal * b.offset;
    Vec tang(2);
    tang << -b.normal[1], b.normal[0];
    const Vec p1 = base - tang * span * 2, p2 = base + tang * span * 2;
    svg << "<line x1=\"" << num(px(p1[0])) << "\" y1=\"" << num(py(p1[1]))
        << "\" x2=\"" << num(px(p2[0])) << "\" y2=\"" << num(py(p2[1]))
        << "\" stroke=\"#2ca02c\" stroke-width=\"1\"/>\n";
  }

  for (const auto& [a, b] : scene.edges)
    svg << "<line x1=\"" << num(px(a[0])) << "\" y1=\"" << num(py(a[1]))
        << "\" x2=\"" << num(px(b[0])) << "\" y2=\"" << num(py(b[1]))
        << "\" stroke=\"#999\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";

  for (const auto& p : scene.points) {
    if (scene.ball_radius > 0)
      svg << "<circle cx=\"" << num(px(p[0])) << "\" cy=\"" << num(py(p[1]))
          << "\" r=\"" << num(scene.ball_radius * unit)
          << "\" fill=\"#1f77b4\" fill-opacity=\"0.12\" stroke=\"#1f77b4\"/>\n";
    svg << "<circle cx=\"" << num(px(p[0])) << "\" cy=\"" << num(py(p[1]))
        << "\" r=\"3.5\" fill=\"#d62728\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mincost
