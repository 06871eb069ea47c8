#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geospan/common.hpp"

namespace geospan {

/// Undirected edge-weighted graph over vertex indices 0..n-1. Edge weights
/// are metric distances of the endpoints; constructions keep i < j per edge
/// and never store duplicates or self-loops.
struct SpannerGraph {
  struct Edge {
    std::size_t u, v;
    double w;
  };

  std::size_t n = 0;
  std::vector<Edge> edges;

  void add_edge(std::size_t u, std::size_t v, double w);
  void sort_edges();  // canonical (u,v) order, for deterministic output
  std::size_t max_degree() const;
  void validate() const;  // structural invariants; throws on violation
};

/// Compressed adjacency built once per graph for the shortest-path kernels.
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<std::pair<std::size_t, double>> nbrs;

  explicit Adjacency(const SpannerGraph& g);
  std::size_t size() const { return offsets.size() - 1; }
};

/// Metric oracle over vertex pairs.
using Metric = std::function<double(std::size_t, std::size_t)>;

/// Single-source shortest-path distances; unreachable entries are nullopt,
/// never a sentinel value.
std::vector<std::optional<double>> sssp(const Adjacency& adj, std::size_t source);

/// Exact shortest-path distance between two vertices, nullopt if disconnected.
std::optional<double> graph_distance(const SpannerGraph& g, std::size_t s,
                                     std::size_t t);

/// Result of a full dilation scan. When connected == false the offending
/// pair is reported and ratio/worst are meaningless.
struct RatioResult {
  bool connected = true;
  double ratio = 0.0;
  std::size_t worst_u = 0, worst_v = 0;
  std::size_t unreachable_u = 0, unreachable_v = 0;
};

/// max over i<j of d_G(i,j) / metric(i,j), with the arg-max pair. Serial
/// reference implementation.
RatioResult spanning_ratio_serial(const SpannerGraph& g, const Metric& metric);

/// OpenMP kernel, parallel over source vertices. Produces the identical
/// result to spanning_ratio_serial (same per-pair values, same tie rule).
RatioResult spanning_ratio(const SpannerGraph& g, const Metric& metric);

/// All-pairs distance matrix (row i = sssp from i). Serial and OpenMP
/// variants compute identical matrices.
std::vector<std::vector<std::optional<double>>> all_pairs_serial(
    const SpannerGraph& g);
std::vector<std::vector<std::optional<double>>> all_pairs(const SpannerGraph& g);

struct VerifyReport {
  bool pass = false;
  bool connected = true;
  bool edge_weights_ok = true;
  double ratio = 0.0;
  double t = 0.0, tol = 0.0;
  std::size_t worst_u = 0, worst_v = 0;
  std::size_t unreachable_u = 0, unreachable_v = 0;
  std::size_t edge_count = 0;
  std::size_t max_degree = 0;

  std::string to_json() const;
};

/// PASS iff every edge weight matches the metric (1e-9 relative) and the
/// spanning ratio is at most t*(1+tol).
VerifyReport verify_spanner(const SpannerGraph& g, const Metric& metric, double t,
                            double tol = kRelTol);

/// Every edge weight equals metric(u,v) within relative 1e-9.
bool check_edge_weights(const SpannerGraph& g, const Metric& metric);

// ---- JSON interchange:  {"n": n, "edges": [[i, j, w], ...]} with i < j.

SpannerGraph graph_from_json(const std::string& text);
std::string graph_to_json(const SpannerGraph& g);
SpannerGraph load_graph(const std::string& path);
void save_graph(const SpannerGraph& g, const std::string& path);

}  // namespace geospan
