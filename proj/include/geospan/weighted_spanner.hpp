#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "geospan/spanner_graph.hpp"
#include "geospan/weighted_points.hpp"

namespace geospan {

/// One cluster: a center index and the member indices (center included).
/// Every member p satisfies |p c| <= eps*w(p) and w(c) <= w(p).
struct Cluster {
  std::size_t center;
  std::vector<std::size_t> members;
};

struct Clustering {
  std::vector<Cluster> clusters;
  double epsilon = 0.0;

  std::vector<std::size_t> centers() const;
  /// center index for each point of the clustered set
  std::vector<std::size_t> center_of(std::size_t n) const;
  std::string to_json() const;
};

/// Weight-ordered clustering: process points by non-decreasing weight (ties
/// by input index); a point joins the Euclidean-nearest center c when
/// |c p| <= eps*w(p), otherwise it opens a new cluster.
Clustering cluster_points(const PointSet& s, double eps);

/// Path-greedy (1+eps)-spanner on a point list under d_w: candidate pairs in
/// increasing d_w order, an edge is added iff the current graph distance
/// exceeds (1+eps) times d_w. Vertices are positions in `centers`.
SpannerGraph build_backbone(const PointSet& centers, double eps);

/// Largest eps accepted by build_aw_spanner (sqrt(2) - 1).
double aw_eps_limit();

/// The full additively weighted (2+eps)-spanner: clustering, a backbone on
/// the centers, and attachment of every non-center to its center and the
/// center's backbone neighbours. Requires 0 < eps <= sqrt(2)-1.
SpannerGraph build_aw_spanner(const PointSet& s, double eps);

/// Same, but also exposes the clustering and backbone for inspection.
struct AwSpannerResult {
  SpannerGraph graph;
  Clustering clustering;
  SpannerGraph backbone;                 // vertices = center list positions
  std::vector<std::size_t> center_ids;   // backbone vertex -> point index
};
AwSpannerResult build_aw_spanner_full(const PointSet& s, double eps);

}  // namespace geospan
