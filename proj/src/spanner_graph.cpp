#include "geospan/spanner_graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace geospan {

void SpannerGraph::add_edge(std::size_t u, std::size_t v, double w) {
  if (u == v) throw std::invalid_argument("self-loop edge");
  if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
  if (u > v) std::swap(u, v);
  edges.push_back({u, v, w});
}

void SpannerGraph::sort_edges() {
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
}

std::size_t SpannerGraph::max_degree() const {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

void SpannerGraph::validate() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("graph has a self-loop");
    if (e.u >= n || e.v >= n)
      throw std::invalid_argument("graph edge endpoint out of range");
    if (!(e.w >= 0.0)) throw std::invalid_argument("graph edge with negative weight");
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second)
      throw std::invalid_argument("duplicate edge (" + std::to_string(key.first) +
                                  "," + std::to_string(key.second) + ")");
  }
}

Adjacency::Adjacency(const SpannerGraph& g) {
  std::vector<std::size_t> deg(g.n, 0);
  for (const auto& e : g.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets.assign(g.n + 1, 0);
  for (std::size_t i = 0; i < g.n; ++i) offsets[i + 1] = offsets[i] + deg[i];
  nbrs.resize(offsets.back());
  std::vector<std::size_t> fill(g.n, 0);
  for (const auto& e : g.edges) {
    nbrs[offsets[e.u] + fill[e.u]++] = {e.v, e.w};
    nbrs[offsets[e.v] + fill[e.v]++] = {e.u, e.w};
  }
}

std::vector<std::optional<double>> sssp(const Adjacency& adj, std::size_t source) {
  const std::size_t n = adj.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<bool> done(n, false);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[source] = 0.0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = true;
    for (std::size_t k = adj.offsets[u]; k < adj.offsets[u + 1]; ++k) {
      const auto [v, w] = adj.nbrs[k];
      const double nd = d + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.push({nd, v});
      }
    }
  }
  std::vector<std::optional<double>> out(n);
  for (std::size_t i = 0; i < n; ++i)
    if (done[i]) out[i] = dist[i];
  return out;
}

std::optional<double> graph_distance(const SpannerGraph& g, std::size_t s,
                                     std::size_t t) {
  if (s >= g.n || t >= g.n)
    throw std::invalid_argument("graph_distance: vertex out of range");
  if (s == t) return 0.0;
  Adjacency adj(g);
  return sssp(adj, s)[t];
}

namespace {

// Per-source scan shared by the serial and parallel ratio kernels. Scans
// targets v > u so every unordered pair is visited exactly once.
struct SourceBest {
  bool connected = true;
  double ratio = -1.0;
  std::size_t v = 0;
  std::size_t bad_v = 0;
};

SourceBest scan_source(const Adjacency& adj, const Metric& metric, std::size_t u) {
  SourceBest best;
  const auto dist = sssp(adj, u);
  for (std::size_t v = u + 1; v < adj.size(); ++v) {
    if (!dist[v]) {
      best.connected = false;
      best.bad_v = v;
      return best;
    }
    const double r = *dist[v] / metric(u, v);
    if (r > best.ratio) {
      best.ratio = r;
      best.v = v;
    }
  }
  return best;
}

RatioResult reduce_bests(const std::vector<SourceBest>& bests) {
  RatioResult res;
  for (std::size_t u = 0; u < bests.size(); ++u) {
    const auto& b = bests[u];
    if (!b.connected) {
      res.connected = false;
      res.unreachable_u = u;
      res.unreachable_v = b.bad_v;
      return res;
    }
    if (b.ratio > res.ratio) {
      res.ratio = b.ratio;
      res.worst_u = u;
      res.worst_v = b.v;
    }
  }
  return res;
}

}  // namespace

RatioResult spanning_ratio_serial(const SpannerGraph& g, const Metric& metric) {
  Adjacency adj(g);
  std::vector<SourceBest> bests(g.n);
  for (std::size_t u = 0; u < g.n; ++u) bests[u] = scan_source(adj, metric, u);
  return reduce_bests(bests);
}

RatioResult spanning_ratio(const SpannerGraph& g, const Metric& metric) {
  Adjacency adj(g);
  std::vector<SourceBest> bests(g.n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t u = 0; u < g.n; ++u) bests[u] = scan_source(adj, metric, u);
  return reduce_bests(bests);
}

std::vector<std::vector<std::optional<double>>> all_pairs_serial(
    const SpannerGraph& g) {
  Adjacency adj(g);
  std::vector<std::vector<std::optional<double>>> m(g.n);
  for (std::size_t u = 0; u < g.n; ++u) m[u] = sssp(adj, u);
  return m;
}

std::vector<std::vector<std::optional<double>>> all_pairs(const SpannerGraph& g) {
  Adjacency adj(g);
  std::vector<std::vector<std::optional<double>>> m(g.n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t u = 0; u < g.n; ++u) m[u] = sssp(adj, u);
  return m;
}

bool check_edge_weights(const SpannerGraph& g, const Metric& metric) {
  for (const auto& e : g.edges)
    if (!nearly_equal(e.w, metric(e.u, e.v))) return false;
  return true;
}

VerifyReport verify_spanner(const SpannerGraph& g, const Metric& metric, double t,
                            double tol) {
  VerifyReport rep;
  rep.t = t;
  rep.tol = tol;
  rep.edge_count = g.edges.size();
  rep.max_degree = g.max_degree();
  rep.edge_weights_ok = check_edge_weights(g, metric);
  const RatioResult rr = spanning_ratio(g, metric);
  rep.connected = rr.connected;
  if (!rr.connected) {
    rep.unreachable_u = rr.unreachable_u;
    rep.unreachable_v = rr.unreachable_v;
    rep.pass = false;
    return rep;
  }
  rep.ratio = rr.ratio;
  rep.worst_u = rr.worst_u;
  rep.worst_v = rr.worst_v;
  rep.pass = rep.edge_weights_ok && rr.ratio <= t * (1.0 + tol);
  return rep;
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["ratio"] = ratio;
  j["worst_pair"] = {worst_u, worst_v};
  j["edges"] = edge_count;
  j["pass"] = pass;
  j["max_degree"] = max_degree;
  j["t"] = t;
  j["tol"] = tol;
  j["connected"] = connected;
  j["edge_weights_ok"] = edge_weights_ok;
  if (!connected) j["unreachable_pair"] = {unreachable_u, unreachable_v};
  return j.dump(2) + "\n";
}

SpannerGraph graph_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SpannerGraph g;
  g.n = j.at("n").get<std::size_t>();
  for (const auto& je : j.at("edges")) {
    if (!je.is_array() || je.size() != 3)
      throw std::invalid_argument("graph edge must be [i, j, weight]");
    g.add_edge(je[0].get<std::size_t>(), je[1].get<std::size_t>(),
               je[2].get<double>());
  }
  g.validate();
  return g;
}

std::string graph_to_json(const SpannerGraph& g) {
  nlohmann::json j;
  j["n"] = g.n;
  j["edges"] = nlohmann::json::array();
  SpannerGraph sorted = g;
  sorted.sort_edges();
  for (const auto& e : sorted.edges) j["edges"].push_back({e.u, e.v, e.w});
  return j.dump(2) + "\n";
}

SpannerGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return graph_from_json(ss.str());
}

void save_graph(const SpannerGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write graph file: " + path);
  out << graph_to_json(g);
}

}  // namespace geospan
