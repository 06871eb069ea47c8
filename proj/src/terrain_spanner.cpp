#include "geospan/terrain_spanner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "geospan/common.hpp"
#include "geospan/weighted_spanner.hpp"
#include "json.hpp"

namespace geospan {

SpannerMode spanner_mode_from_string(const std::string& s) {
  if (s == "basic") return SpannerMode::Basic;
  if (s == "refined") return SpannerMode::Refined;
  throw std::invalid_argument("unknown spanner mode: " + s);
}

std::string trace_to_json(const std::vector<TraceLevel>& levels) {
  nlohmann::json j;
  j["levels"] = nlohmann::json::array();
  for (const auto& l : levels)
    j["levels"].push_back(
        {{"n", l.n}, {"n_in", l.n_in}, {"sep_type", l.sep_type}});
  return j.dump(2) + "\n";
}

std::vector<SpannerGraph::Edge> process_side(const SteinerGraph& sg,
                                             const GeodesicPath& sigma,
                                             const LocatedPoints& pts,
                                             const std::vector<std::size_t>& subset,
                                             SpannerMode mode, double eps1,
                                             double eps2) {
  if (sigma.nodes.empty())
    throw std::invalid_argument("process_side: empty side");
  if (!(eps1 > 0.0) || !(eps2 > 0.0))
    throw std::invalid_argument("process_side: eps parameters must be > 0");

  std::vector<std::size_t> sources;
  sources.reserve(subset.size());
  for (std::size_t p : subset) sources.push_back(pts.nodes[p]);
  const auto rows = sg_distance_rows(sg, sources);

  // weighted 1-D instance over arc-length positions, with a parent map
  PointSet inst;
  inst.dim = 1;
  std::vector<std::size_t> parent;  // instance entry -> position in subset
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (mode == SpannerMode::Basic) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < sigma.nodes.size(); ++i)
        if (rows[k][sigma.nodes[i]] < rows[k][sigma.nodes[best]]) best = i;
      inst.points.push_back(
          WeightedPoint{{sigma.prefix[best]}, rows[k][sigma.nodes[best]]});
      parent.push_back(k);
    } else {
      const auto ps = build_projection_set(sg, rows[k], sources[k], sigma, eps2);
      for (const auto& rep : ps.reps) {
        inst.points.push_back(WeightedPoint{{rep.arc_pos}, rep.weight});
        parent.push_back(k);
      }
    }
  }

  const SpannerGraph one_d = build_aw_spanner(inst, eps1);

  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<SpannerGraph::Edge> out;
  for (const auto& e : one_d.edges) {
    const std::size_t ka = parent[e.u], kb = parent[e.v];
    if (ka == kb) continue;
    const auto key = std::minmax(subset[ka], subset[kb]);
    if (!seen.insert(key).second) continue;
    const double w = rows[ka][sources[kb]];
    out.push_back({key.first, key.second, w});
  }
  return out;
}

namespace {

struct Builder {
  const Terrain& terrain;
  const TerrainInstance& inst;
  SpannerMode mode;
  double eps1, eps2;

  std::set<std::pair<std::size_t, std::size_t>> seen;
  TerrainSpannerResult res;

  void add_edges(const std::vector<SpannerGraph::Edge>& edges) {
    for (const auto& e : edges) {
      if (!seen.insert({e.u, e.v}).second) continue;  // keep-first
      res.graph.add_edge(e.u, e.v, e.w);
    }
  }

  void complete_graph(const std::vector<std::size_t>& subset) {
    std::vector<std::size_t> sources;
    for (std::size_t p : subset) sources.push_back(inst.points.nodes[p]);
    const auto rows = sg_distance_rows(inst.sg, sources);
    std::vector<SpannerGraph::Edge> edges;
    for (std::size_t a = 0; a < subset.size(); ++a)
      for (std::size_t b = a + 1; b < subset.size(); ++b) {
        const auto key = std::minmax(subset[a], subset[b]);
        edges.push_back({key.first, key.second, rows[a][sources[b]]});
      }
    add_edges(edges);
  }

  void recurse(const std::vector<std::size_t>& subset, std::size_t depth) {
    res.max_depth = std::max(res.max_depth, depth);
    // integer balance degenerates below n = 5: complete graph base case
    if (subset.size() <= 4) {
      res.trace.push_back({subset.size(), 0, "complete"});
      complete_graph(subset);
      return;
    }
    const Separator sep =
        find_balanced_separator(inst.sg, terrain, inst.points, subset);
    if (sep.used_fallback) ++res.separator_fallbacks;
    res.trace.push_back(
        {subset.size(), sep.inside.size(),
         sep.kind == Separator::Kind::Path ? "path" : "triangle"});

    for (const auto& side : sep.sides)
      add_edges(process_side(inst.sg, side, inst.points, subset, mode, eps1, eps2));

    std::set<std::size_t> in_set(sep.inside.begin(), sep.inside.end());
    std::vector<std::size_t> s_in = sep.inside;
    std::vector<std::size_t> s_out;
    for (std::size_t p : subset)
      if (!in_set.count(p)) s_out.push_back(p);
    recurse(s_in, depth + 1);
    recurse(s_out, depth + 1);
  }
};

}  // namespace

TerrainSpannerResult build_terrain_spanner(const Terrain& t,
                                           const TerrainInstance& inst,
                                           double eps, SpannerMode mode,
                                           std::optional<double> eps1_override,
                                           std::optional<double> eps2_override) {
  if (!(eps > 0.0) || eps > 1.0)
    throw std::invalid_argument("build_terrain_spanner: eps must lie in (0, 1]");

  const double eps1 =
      eps1_override.value_or(mode == SpannerMode::Basic ? eps / 3.0 : eps / 4.0);
  const double eps2 = eps2_override.value_or(eps / 4.0);

  Builder b{t, inst, mode, eps1, eps2, {}, {}};
  b.res.graph.n = inst.points.size();
  std::vector<std::size_t> all(inst.points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (!all.empty()) b.recurse(all, 0);
  b.res.graph.sort_edges();
  return std::move(b.res);
}

TerrainSpannerResult build_terrain_spanner(const Terrain& t,
                                           const std::vector<Vec2>& pts,
                                           double eps, SpannerMode mode,
                                           std::size_t ms) {
  const TerrainInstance inst = prepare_instance(t, ms, pts);
  return build_terrain_spanner(t, inst, eps, mode);
}

SpannerStats spanner_stats(const SpannerGraph& g, std::size_t n,
                           std::size_t depth) {
  SpannerStats st;
  st.edges = g.edges.size();
  const double nlogn =
      static_cast<double>(n) * std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  st.edges_per_nlogn = nlogn > 0.0 ? static_cast<double>(st.edges) / nlogn : 0.0;
  st.max_degree = g.max_degree();
  st.depth = depth;
  return st;
}

std::string SpannerStats::to_json() const {
  nlohmann::json j;
  j["edges"] = edges;
  j["edges_per_nlogn"] = edges_per_nlogn;
  j["max_degree"] = max_degree;
  j["depth"] = depth;
  return j.dump(2) + "\n";
}

}  // namespace geospan
