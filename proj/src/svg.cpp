#include "geospan/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

namespace geospan {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string render_svg(const SvgLayers& layers) {
  double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  bool first = true;
  auto grow = [&](const Vec2& p) {
    if (first) {
      xlo = xhi = p.x;
      ylo = yhi = p.y;
      first = false;
    } else {
      xlo = std::min(xlo, p.x);
      xhi = std::max(xhi, p.x);
      ylo = std::min(ylo, p.y);
      yhi = std::max(yhi, p.y);
    }
  };
  if (layers.terrain)
    for (const auto& v : layers.terrain->vertices()) grow(v.xy());
  for (const auto& line : layers.polylines)
    for (const auto& p : line) grow(p);
  for (const auto& p : layers.points) grow(p);

  const double pad = 0.05 * std::max(xhi - xlo, yhi - ylo) + 1e-6;
  const double w = (xhi - xlo) + 2 * pad, h = (yhi - ylo) + 2 * pad;
  // flip y so the drawing matches the usual math orientation
  auto X = [&](double x) { return fmt(x - xlo + pad); };
  auto Y = [&](double y) { return fmt(yhi + pad - y); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt(w) +
         " " + fmt(h) + "\" width=\"640\" height=\"640\">\n";

  if (layers.terrain) {
    svg += "<g stroke=\"#c8c8c8\" stroke-width=\"" + fmt(0.004 * w) +
           "\" fill=\"none\">\n";
    for (const auto& e : layers.terrain->edges()) {
      const Vec2 a = layers.terrain->vertices()[e.a].xy();
      const Vec2 b = layers.terrain->vertices()[e.b].xy();
      svg += "<line x1=\"" + X(a.x) + "\" y1=\"" + Y(a.y) + "\" x2=\"" + X(b.x) +
             "\" y2=\"" + Y(b.y) + "\"/>\n";
    }
    svg += "</g>\n";
  }

  if (layers.graph) {
    svg += "<g stroke=\"#3264c8\" stroke-width=\"" + fmt(0.003 * w) +
           "\" fill=\"none\">\n";
    for (const auto& e : layers.graph->edges) {
      if (e.u >= layers.points.size() || e.v >= layers.points.size())
        throw std::invalid_argument("svg: graph vertex without a point coordinate");
      const Vec2 a = layers.points[e.u], b = layers.points[e.v];
      svg += "<line x1=\"" + X(a.x) + "\" y1=\"" + Y(a.y) + "\" x2=\"" + X(b.x) +
             "\" y2=\"" + Y(b.y) + "\"/>\n";
    }
    svg += "</g>\n";
  }

  for (const auto& line : layers.polylines) {
    svg += "<path stroke=\"#d03232\" stroke-width=\"" + fmt(0.006 * w) +
           "\" fill=\"none\" d=\"";
    for (std::size_t i = 0; i < line.size(); ++i)
      svg += (i == 0 ? "M " : "L ") + X(line[i].x) + " " + Y(line[i].y) + " ";
    svg += "\"/>\n";
  }

  const std::set<std::size_t> hi(layers.highlight.begin(), layers.highlight.end());
  for (std::size_t i = 0; i < layers.points.size(); ++i) {
    const Vec2& p = layers.points[i];
    svg += "<circle cx=\"" + X(p.x) + "\" cy=\"" + Y(p.y) + "\" r=\"" +
           fmt(0.008 * w) + "\" fill=\"" + (hi.count(i) ? "#d03232" : "#202020") +
           "\"/>\n";
  }

  svg += "</svg>\n";
  return svg;
}

void save_svg(const SvgLayers& layers, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write svg file: " + path);
  out << render_svg(layers);
}

}  // namespace geospan
