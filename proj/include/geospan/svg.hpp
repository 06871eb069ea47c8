#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "geospan/spanner_graph.hpp"
#include "geospan/terrain.hpp"

namespace geospan {

/// Layered xy-projection drawing: mesh edges, then graph edges over the
/// point coordinates, then separator/path polylines, then points (with the
/// highlighted subset filled). Output is deterministic: fixed formatting,
/// fixed layer order.
struct SvgLayers {
  const Terrain* terrain = nullptr;
  const SpannerGraph* graph = nullptr;  // drawn over `points`
  std::vector<std::vector<Vec2>> polylines;
  std::vector<Vec2> points;
  std::vector<std::size_t> highlight;  // indices into points
};

std::string render_svg(const SvgLayers& layers);
void save_svg(const SvgLayers& layers, const std::string& path);

}  // namespace geospan
