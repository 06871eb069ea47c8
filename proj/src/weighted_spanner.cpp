#include "geospan/weighted_spanner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace geospan {

std::vector<std::size_t> Clustering::centers() const {
  std::vector<std::size_t> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back(c.center);
  return out;
}

std::vector<std::size_t> Clustering::center_of(std::size_t n) const {
  std::vector<std::size_t> out(n, static_cast<std::size_t>(-1));
  for (const auto& c : clusters)
    for (std::size_t m : c.members) out[m] = c.center;
  return out;
}

std::string Clustering::to_json() const {
  nlohmann::json j;
  j["clusters"] = nlohmann::json::array();
  for (const auto& c : clusters)
    j["clusters"].push_back({{"center", c.center}, {"members", c.members}});
  return j.dump(2) + "\n";
}

Clustering cluster_points(const PointSet& s, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("cluster_points: eps must be > 0");
  s.validate();

  Clustering out;
  out.epsilon = eps;
  if (s.size() == 0) return out;

  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s[a].weight < s[b].weight;
  });

  for (std::size_t idx : order) {
    // nearest existing center, ties to the lowest center index
    std::size_t best_cluster = static_cast<std::size_t>(-1);
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < out.clusters.size(); ++c) {
      const double d = euclidean(s[out.clusters[c].center], s[idx]);
      if (d < best_dist) {
        best_dist = d;
        best_cluster = c;
      }
    }
    if (best_cluster != static_cast<std::size_t>(-1) &&
        best_dist <= eps * s[idx].weight) {
      out.clusters[best_cluster].members.push_back(idx);
    } else {
      out.clusters.push_back(Cluster{idx, {idx}});
    }
  }
  return out;
}

namespace {

// Incremental-Dijkstra helper for the greedy construction. Distances only
// shrink as edges are added, so a cached array can certify "already
// spanned" decisions; acceptance always recomputes at the current graph.
class GreedyState {
 public:
  explicit GreedyState(std::size_t n)
      : n_(n), adj_(n), cache_(n), cache_version_(n, static_cast<std::size_t>(-1)) {}

  void add_edge(std::size_t u, std::size_t v, double w) {
    adj_[u].push_back({v, w});
    adj_[v].push_back({u, w});
    ++version_;
  }

  // distance from u to v as of the version the cache was filled
  double cached(std::size_t u, std::size_t v) {
    if (cache_version_[u] == static_cast<std::size_t>(-1))
      return std::numeric_limits<double>::infinity();
    return cache_[u][v];
  }

  double fresh(std::size_t u, std::size_t v) {
    if (cache_version_[u] != version_) refresh(u);
    return cache_[u][v];
  }

 private:
  void refresh(std::size_t u) {
    auto& dist = cache_[u];
    dist.assign(n_, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[u] = 0.0;
    pq.push({0.0, u});
    while (!pq.empty()) {
      auto [d, x] = pq.top();
      pq.pop();
      if (d > dist[x]) continue;
      for (const auto& [y, w] : adj_[x]) {
        const double nd = d + w;
        if (nd < dist[y]) {
          dist[y] = nd;
          pq.push({nd, y});
        }
      }
    }
    cache_version_[u] = version_;
  }

  std::size_t n_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj_;
  std::vector<std::vector<double>> cache_;
  std::vector<std::size_t> cache_version_;
  std::size_t version_ = 0;
};

}  // namespace

SpannerGraph build_backbone(const PointSet& centers, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("build_backbone: eps must be > 0");
  centers.validate();

  const std::size_t m = centers.size();
  SpannerGraph g;
  g.n = m;
  if (m < 2) return g;

  struct Pair {
    double d;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      pairs.push_back({dw_distance(centers[i], centers[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(a.d, a.i, a.j) < std::tie(b.d, b.i, b.j);
  });

  GreedyState st(m);
  for (const auto& p : pairs) {
    const double threshold = (1.0 + eps) * p.d;
    if (st.cached(p.i, p.j) <= threshold) continue;
    if (st.fresh(p.i, p.j) <= threshold) continue;
    st.add_edge(p.i, p.j, p.d);
    g.add_edge(p.i, p.j, p.d);
  }
  g.sort_edges();
  return g;
}

double aw_eps_limit() { return std::sqrt(2.0) - 1.0; }

AwSpannerResult build_aw_spanner_full(const PointSet& s, double eps) {
  if (!(eps > 0.0) || eps > aw_eps_limit())
    throw std::invalid_argument(
        "build_aw_spanner: eps must lie in (0, sqrt(2)-1]; got " +
        std::to_string(eps));
  s.validate();

  AwSpannerResult res;
  res.graph.n = s.size();
  if (s.size() <= 1) {
    if (s.size() == 1) res.clustering.clusters.push_back(Cluster{0, {0}});
    res.clustering.epsilon = eps;
    return res;
  }

  res.clustering = cluster_points(s, eps);
  res.center_ids = res.clustering.centers();

  PointSet centers;
  centers.dim = s.dim;
  for (std::size_t c : res.center_ids) centers.points.push_back(s[c]);
  res.backbone = build_backbone(centers, eps);

  std::set<std::pair<std::size_t, std::size_t>> have;
  auto add_unique = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    const auto key = std::minmax(a, b);
    if (!have.insert(key).second) return;
    res.graph.add_edge(key.first, key.second,
                       dw_distance(s[key.first], s[key.second]));
  };

  // backbone edges, mapped to point indices
  std::vector<std::vector<std::size_t>> bb_nbrs(res.center_ids.size());
  for (const auto& e : res.backbone.edges) {
    bb_nbrs[e.u].push_back(e.v);
    bb_nbrs[e.v].push_back(e.u);
    add_unique(res.center_ids[e.u], res.center_ids[e.v]);
  }

  // attach non-centers: the center itself plus all its backbone neighbours
  for (std::size_t c = 0; c < res.clustering.clusters.size(); ++c) {
    const auto& cluster = res.clustering.clusters[c];
    for (std::size_t p : cluster.members) {
      if (p == cluster.center) continue;
      add_unique(p, cluster.center);
      for (std::size_t nb : bb_nbrs[c]) add_unique(p, res.center_ids[nb]);
    }
  }

  res.graph.sort_edges();
  return res;
}

SpannerGraph build_aw_spanner(const PointSet& s, double eps) {
  return build_aw_spanner_full(s, eps).graph;
}

}  // namespace geospan
