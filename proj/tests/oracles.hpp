#pragma once

// Test-only oracles, deliberately independent of the library's Dijkstra
// path: Floyd-Warshall and Bellman-Ford over the same graphs.

#include <limits>
#include <optional>
#include <vector>

#include "geospan/spanner_graph.hpp"

namespace oracles {

inline std::vector<std::vector<std::optional<double>>> floyd_warshall(
    const geospan::SpannerGraph& g) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(g.n, std::vector<double>(g.n, inf));
  for (std::size_t i = 0; i < g.n; ++i) d[i][i] = 0.0;
  for (const auto& e : g.edges) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.w);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.w);
  }
  for (std::size_t k = 0; k < g.n; ++k)
    for (std::size_t i = 0; i < g.n; ++i) {
      if (d[i][k] == inf) continue;
      for (std::size_t j = 0; j < g.n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    }
  std::vector<std::vector<std::optional<double>>> out(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    out[i].resize(g.n);
    for (std::size_t j = 0; j < g.n; ++j)
      if (d[i][j] != inf) out[i][j] = d[i][j];
  }
  return out;
}

inline std::vector<std::optional<double>> bellman_ford(
    const geospan::SpannerGraph& g, std::size_t source) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(g.n, inf);
  d[source] = 0.0;
  for (std::size_t round = 0; round + 1 < g.n; ++round) {
    bool changed = false;
    for (const auto& e : g.edges) {
      if (d[e.u] + e.w < d[e.v]) {
        d[e.v] = d[e.u] + e.w;
        changed = true;
      }
      if (d[e.v] + e.w < d[e.u]) {
        d[e.u] = d[e.v] + e.w;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::vector<std::optional<double>> out(g.n);
  for (std::size_t i = 0; i < g.n; ++i)
    if (d[i] != inf) out[i] = d[i];
  return out;
}

/// Brute-force dilation via Floyd-Warshall; returns -1 on a disconnected pair.
inline double brute_ratio(const geospan::SpannerGraph& g,
                          const geospan::Metric& metric) {
  const auto d = floyd_warshall(g);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = i + 1; j < g.n; ++j) {
      if (!d[i][j]) return -1.0;
      worst = std::max(worst, *d[i][j] / metric(i, j));
    }
  return worst;
}

}  // namespace oracles
