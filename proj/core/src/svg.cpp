#include "fittsnorm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

namespace fittsnorm {

std::optional<Ellipse> confidence_ellipse(std::span<const Point> points, double chi2_quantile) {
  const std::size_t n = points.size();
  if (n < 3) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (const Point& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const Point& p : points) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
    syy += (p.y - my) * (p.y - my);
  }
  const double d = static_cast<double>(n - 1);
  sxx /= d;
  sxy /= d;
  syy /= d;
  const double tr = sxx + syy;
  const double disc = std::sqrt((sxx - syy) * (sxx - syy) / 4.0 + sxy * sxy);
  const double l1 = tr / 2.0 + disc;
  const double l2 = std::max(0.0, tr / 2.0 - disc);
  Ellipse e;
  e.cx = mx;
  e.cy = my;
  e.semi_major = std::sqrt(l1 * chi2_quantile);
  e.semi_minor = std::sqrt(l2 * chi2_quantile);
  e.angle_rad = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  return e;
}

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

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

}  // namespace

std::string emit_scatter_svg(std::span<const RotatedEndpoint> endpoints,
                             const Condition& condition, const std::string& title) {
  std::vector<Point> pts;
  pts.reserve(endpoints.size());
  for (const RotatedEndpoint& e : endpoints) pts.push_back({e.x, e.y});
  const std::optional<Ellipse> ellipse = confidence_ellipse(pts);

  double extent = condition.width_px / 2.0;
  for (const Point& p : pts) extent = std::max({extent, std::fabs(p.x), std::fabs(p.y)});
  if (ellipse) {
    extent = std::max(extent, std::max(std::fabs(ellipse->cx), std::fabs(ellipse->cy)) +
                                  ellipse->semi_major);
  }
  extent *= 1.15;
  const double size = 400.0;
  const double scale = size / (2.0 * extent);
  // SVG y grows downwards; flip so +y in the task frame points up.
  auto sx = [&](double x) { return size / 2.0 + x * scale; };
  auto sy = [&](double y) { return size / 2.0 - y * scale; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(size) +
         "\" height=\"" + fmt(size + 24.0) + "\" viewBox=\"0 0 " + fmt(size) + " " +
         fmt(size + 24.0) + "\">\n";
  const std::string caption = title.empty() ? "A=" + fmt(condition.amplitude_px) +
                                                  " W=" + fmt(condition.width_px) +
                                                  " n=" + std::to_string(pts.size())
                                            : title;
  svg += "  <title>" + escape(caption) + "</title>\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"" + fmt(size) + "\" height=\"" + fmt(size) +
         "\" fill=\"white\"/>\n";
  svg += "  <line x1=\"0\" y1=\"" + fmt(sy(0)) + "\" x2=\"" + fmt(size) + "\" y2=\"" + fmt(sy(0)) +
         "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
  svg += "  <circle class=\"target\" cx=\"" + fmt(sx(0)) + "\" cy=\"" + fmt(sy(0)) + "\" r=\"" +
         fmt(condition.width_px / 2.0 * scale) + "\" fill=\"none\" stroke=\"#d62728\"/>\n";
  for (const Point& p : pts) {
    svg += "  <circle class=\"endpoint\" cx=\"" + fmt(sx(p.x)) + "\" cy=\"" + fmt(sy(p.y)) +
           "\" r=\"2\" fill=\"#333333\"/>\n";
  }
  if (ellipse) {
    const double deg = -ellipse->angle_rad * 180.0 / std::numbers::pi;
    svg += "  <ellipse class=\"confidence\" cx=\"" + fmt(sx(ellipse->cx)) + "\" cy=\"" +
           fmt(sy(ellipse->cy)) + "\" rx=\"" + fmt(ellipse->semi_major * scale) + "\" ry=\"" +
           fmt(ellipse->semi_minor * scale) + "\" transform=\"rotate(" + fmt(deg) + " " +
           fmt(sx(ellipse->cx)) + " " + fmt(sy(ellipse->cy)) +
           ")\" fill=\"none\" stroke=\"#1f77b4\"/>\n";
  }
  svg += "  <text x=\"6\" y=\"" + fmt(size + 17.0) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(caption) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace fittsnorm
