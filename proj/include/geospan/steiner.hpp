#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geospan/terrain.hpp"

namespace geospan {

inline constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);

/// Discrete surface graph defining the working geodesic metric d_T: mesh
/// vertices plus m_s equally spaced Steiner points per mesh edge (plus any
/// embedded query points), with a complete arc set on every face. Arc
/// weights are 3D Euclidean lengths, so within-face hops are true geodesic
/// segments.
class SteinerGraph {
 public:
  struct Node {
    Vec3 pos;
    bool on_boundary = false;
  };

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const { return arc_pairs_.size(); }
  const Node& node(std::size_t id) const { return nodes_[id]; }
  Vec2 xy(std::size_t id) const { return nodes_[id].pos.xy(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& arcs() const {
    return arc_pairs_;
  }
  /// All boundary nodes in counterclockwise order around the boundary cycle.
  const std::vector<std::size_t>& boundary_loop() const { return boundary_loop_; }
  const std::vector<std::vector<std::size_t>>& face_nodes() const {
    return face_nodes_;
  }

  /// Nodes adjacent to `id` with arc weights.
  std::pair<const std::pair<std::size_t, double>*, std::size_t> neighbors(
      std::size_t id) const {
    return {nbrs_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
  }

  void validate() const;  // arc/face invariants + connectivity

 private:
  friend struct SteinerBuilder;
  std::vector<Node> nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> arc_pairs_;
  std::vector<std::size_t> offsets_;
  std::vector<std::pair<std::size_t, double>> nbrs_;
  std::vector<std::vector<std::size_t>> face_nodes_;
  std::vector<std::size_t> boundary_loop_;
};

struct SteinerBuild {
  SteinerGraph graph;
  std::vector<std::size_t> embedded;  // node id per extra surface point
};

/// Builds the Steiner graph of a terrain. Extra surface points become nodes
/// of the graph (reusing an existing node when the position coincides), so
/// geodesic queries from input points are plain node queries. Without
/// extras the node count is V + m_s * E.
SteinerBuild build_steiner_graph(const Terrain& t, std::size_t ms,
                                 const std::vector<SurfacePoint>& extras = {});

/// A simple polyline path in the Steiner graph; consecutive nodes share a
/// face and prefix[] carries cumulative arc length.
struct GeodesicPath {
  std::vector<std::size_t> nodes;
  std::vector<Vec3> pts;
  std::vector<double> prefix;

  double length() const { return prefix.empty() ? 0.0 : prefix.back(); }
  std::size_t size() const { return nodes.size(); }
  std::size_t front() const { return nodes.front(); }
  std::size_t back() const { return nodes.back(); }
  std::size_t index_of(std::size_t node) const;  // kNoNode when absent
  bool contains(std::size_t node) const { return index_of(node) != kNoNode; }
  GeodesicPath reversed() const;
  /// Sub-polyline between positions i and j (inclusive, reversing if i > j).
  GeodesicPath subpath(std::size_t i, std::size_t j) const;
  std::vector<Vec2> projected() const;
  std::string to_json() const;
};

/// Shortest-path tree from one source; pops and relaxations break ties by
/// node index, so extracted paths are unique per input.
struct ShortestPathTree {
  std::size_t source = 0;
  std::vector<double> dist;
  std::vector<std::size_t> pred;

  GeodesicPath extract(const SteinerGraph& sg, std::size_t target) const;
};

ShortestPathTree shortest_path_tree(const SteinerGraph& sg, std::size_t source);

/// Exact distances from one node to every node (the graph is connected).
std::vector<double> all_distances(const SteinerGraph& sg, std::size_t source);

/// Distance matrix rows for the given sources; OpenMP-parallel with a
/// serial reference for testing.
std::vector<std::vector<double>> sg_distance_rows(const SteinerGraph& sg,
                                                  const std::vector<std::size_t>& sources);
std::vector<std::vector<double>> sg_distance_rows_serial(
    const SteinerGraph& sg, const std::vector<std::size_t>& sources);

/// Shortest path between two nodes. Symmetric by construction: the query is
/// canonicalized to run from min(a,b).
std::pair<double, GeodesicPath> geodesic_distance(const SteinerGraph& sg,
                                                  std::size_t a, std::size_t b);

struct ClosestOnPath {
  std::size_t path_index = 0;
  std::size_t node = kNoNode;
  double dist = 0.0;
  double arc_pos = 0.0;
};

/// Node of sigma minimizing d_T(p, .), optionally restricted to an
/// arc-length interval [lo, hi]; ties break to the smaller arc position.
ClosestOnPath closest_on_path(const SteinerGraph& sg, std::size_t p,
                              const GeodesicPath& sigma,
                              std::optional<std::pair<double, double>> interval = {});

enum class Side { Left, Right, On };

/// Side of a directed boundary-to-boundary path in the xy-projection.
/// Right is the closed region swept by the right hand when walking the path
/// from its first node to its last; On means the query projects onto the
/// path within tolerance.
Side classify_side(const Terrain& t, const GeodesicPath& sigma, const Vec2& q,
                   double tol = 1e-9);

/// Closed polygon of the Right region: the path polyline followed by the
/// boundary walked clockwise from the path's end back to its start.
std::vector<Vec2> right_region_polygon(const Terrain& t, const GeodesicPath& sigma);

/// Representative nodes of sigma for a source p: the closest node p_sigma
/// plus one d_T-closest node per piece of the arc-length window of radius
/// (1+2/eps2)*d_T(p,p_sigma), pieces no longer than eps2*d_T(p,p_sigma).
struct ProjectionRep {
  std::size_t path_index;
  std::size_t node;
  double weight;    // d_T(p, node)
  double arc_pos;
  double piece_lo, piece_hi;
};

struct ProjectionSet {
  std::size_t source_node = kNoNode;
  std::size_t base_index = 0;      // index of p_sigma on sigma
  std::size_t base_node = kNoNode;
  double base_weight = 0.0;        // d_T(p, p_sigma)
  double base_pos = 0.0;
  double window_lo = 0.0, window_hi = 0.0;
  std::vector<ProjectionRep> reps;

  bool in_window(double arc_pos) const;
  /// The rep of the piece containing arc position `pos` (the choice the
  /// ratio proof relies on); nullopt when pos is outside the window.
  std::optional<ProjectionRep> rep_for(double pos) const;
};

ProjectionSet build_projection_set(const SteinerGraph& sg, std::size_t p,
                                   const GeodesicPath& sigma, double eps2);

/// Same but reusing a precomputed distance row from p.
ProjectionSet build_projection_set(const SteinerGraph& sg,
                                   const std::vector<double>& dist_from_p,
                                   std::size_t p, const GeodesicPath& sigma,
                                   double eps2);

/// Structural path invariants (simple, face-sharing hops, length bookkeeping).
void validate_path(const SteinerGraph& sg, const GeodesicPath& path);

}  // namespace geospan
