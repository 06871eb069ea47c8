#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geospan/separator.hpp"
#include "geospan/spanner_graph.hpp"
#include "geospan/steiner.hpp"
#include "geospan/terrain.hpp"

namespace geospan {

enum class SpannerMode { Basic, Refined };
SpannerMode spanner_mode_from_string(const std::string& s);

/// One recursion record: subset size, inside size of the split (0 for a
/// complete-graph base case), separator type.
struct TraceLevel {
  std::size_t n = 0;
  std::size_t n_in = 0;
  std::string sep_type;  // "path" | "triangle" | "complete"
};

std::string trace_to_json(const std::vector<TraceLevel>& levels);

/// Lifted spanner edges contributed by one separator side: each point of
/// the subset is projected onto sigma (the closest node in basic mode, a
/// projection set in refined mode), a weighted 1-D (2+eps1)-spanner is
/// built on the arc-length instance, and its edges are lifted back to the
/// parent points with geodesic weights.
std::vector<SpannerGraph::Edge> process_side(const SteinerGraph& sg,
                                             const GeodesicPath& sigma,
                                             const LocatedPoints& pts,
                                             const std::vector<std::size_t>& subset,
                                             SpannerMode mode, double eps1,
                                             double eps2);

struct TerrainSpannerResult {
  SpannerGraph graph;  // vertices = point indices
  std::vector<TraceLevel> trace;
  std::size_t max_depth = 0;
  std::size_t separator_fallbacks = 0;
};

/// The divide-and-conquer geodesic spanner: balanced sp-separator, per-side
/// 1-D weighted spanners, recursion on both halves. Basic mode targets
/// ratio 6+eps with eps1 = eps/3; refined mode targets 2+eps with
/// eps1 = eps2 = eps/4. Requires eps in (0,1]. The overrides exist for
/// experiments only.
TerrainSpannerResult build_terrain_spanner(
    const Terrain& t, const TerrainInstance& inst, double eps, SpannerMode mode,
    std::optional<double> eps1_override = std::nullopt,
    std::optional<double> eps2_override = std::nullopt);

/// Convenience overload: locates and embeds the points first.
TerrainSpannerResult build_terrain_spanner(const Terrain& t,
                                           const std::vector<Vec2>& pts,
                                           double eps, SpannerMode mode,
                                           std::size_t ms);

struct SpannerStats {
  std::size_t edges = 0;
  double edges_per_nlogn = 0.0;
  std::size_t max_degree = 0;
  std::size_t depth = 0;

  std::string to_json() const;
};

SpannerStats spanner_stats(const SpannerGraph& g, std::size_t n, std::size_t depth);

}  // namespace geospan
