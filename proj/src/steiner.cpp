#include "geospan/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "geospan/common.hpp"
#include "json.hpp"

namespace geospan {

namespace {

constexpr double kCoincideTol = 1e-12;

}  // namespace

// ---- construction ----------------------------------------------------------

struct SteinerBuilder {
  const Terrain& t;
  std::size_t ms;
  SteinerBuild out;
  std::vector<std::vector<std::size_t>> edge_nodes;   // per mesh edge, a -> b order
  std::vector<std::vector<std::pair<double, std::size_t>>> edge_extras;

  SteinerBuilder(const Terrain& terrain, std::size_t m) : t(terrain), ms(m) {}

  std::size_t add_node(const Vec3& pos, bool on_boundary) {
    out.graph.nodes_.push_back({pos, on_boundary});
    return out.graph.nodes_.size() - 1;
  }

  void build(const std::vector<SurfacePoint>& extras) {
    auto& g = out.graph;
    const auto& verts = t.vertices();
    const auto& tris = t.triangles();
    const auto& edges = t.edges();

    std::vector<bool> vertex_on_boundary(verts.size(), false);
    for (const auto& e : edges)
      if (e.boundary()) vertex_on_boundary[e.a] = vertex_on_boundary[e.b] = true;

    for (std::size_t v = 0; v < verts.size(); ++v)
      add_node(verts[v], vertex_on_boundary[v]);

    edge_nodes.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Vec3 a = verts[edges[e].a], b = verts[edges[e].b];
      for (std::size_t i = 1; i <= ms; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(ms + 1);
        edge_nodes[e].push_back(add_node(a + (b - a) * s, edges[e].boundary()));
      }
    }

    g.face_nodes_.resize(tris.size());
    for (std::size_t f = 0; f < tris.size(); ++f) {
      for (std::size_t v : tris[f]) g.face_nodes_[f].push_back(v);
      for (int k = 0; k < 3; ++k) {
        const std::size_t e =
            t.edge_between(tris[f][k], tris[f][(k + 1) % 3]);
        for (std::size_t id : edge_nodes[e]) g.face_nodes_[f].push_back(id);
      }
    }

    edge_extras.resize(edges.size());
    for (const auto& sp : extras) embed(sp);

    build_arcs();
    build_boundary_loop();
  }

  // Faces a surface point belongs to, via its zero barycentric components.
  std::vector<std::size_t> faces_of(const SurfacePoint& sp) const {
    std::vector<std::size_t> faces{sp.face};
    const auto& tri = t.triangles()[sp.face];
    for (int k = 0; k < 3; ++k) {
      if (sp.bary[k] > kCoincideTol) continue;
      // on the edge opposite corner k
      const std::size_t e = t.edge_between(tri[(k + 1) % 3], tri[(k + 2) % 3]);
      const auto& ei = t.edges()[e];
      const std::size_t other = (ei.face0 == sp.face) ? ei.face1 : ei.face0;
      if (other != Terrain::EdgeInfo::kNone) faces.push_back(other);
    }
    return faces;
  }

  void embed(const SurfacePoint& sp) {
    auto& g = out.graph;
    const Vec3 pos = t.position(sp);
    const auto faces = faces_of(sp);
    for (std::size_t f : faces)
      for (std::size_t id : g.face_nodes_[f])
        if (distance(g.nodes_[id].pos, pos) <= kCoincideTol) {
          out.embedded.push_back(id);
          return;
        }

    bool on_boundary = false;
    const auto& tri = t.triangles()[sp.face];
    for (int k = 0; k < 3; ++k) {
      if (sp.bary[k] > kCoincideTol) continue;
      const std::size_t e = t.edge_between(tri[(k + 1) % 3], tri[(k + 2) % 3]);
      if (t.edges()[e].boundary()) on_boundary = true;
      const Vec3 a = t.vertices()[t.edges()[e].a];
      const Vec3 b = t.vertices()[t.edges()[e].b];
      const double len = distance(a, b);
      edge_extras[e].push_back({distance(a, pos) / len, g.nodes_.size()});
    }
    const std::size_t id = add_node(pos, on_boundary);
    for (std::size_t f : faces) g.face_nodes_[f].push_back(id);
    out.embedded.push_back(id);
  }

  void build_arcs() {
    auto& g = out.graph;
    std::set<std::pair<std::size_t, std::size_t>> arcset;
    for (const auto& fn : g.face_nodes_)
      for (std::size_t i = 0; i < fn.size(); ++i)
        for (std::size_t j = i + 1; j < fn.size(); ++j)
          arcset.insert(std::minmax(fn[i], fn[j]));
    g.arc_pairs_.assign(arcset.begin(), arcset.end());

    const std::size_t n = g.nodes_.size();
    std::vector<std::size_t> deg(n, 0);
    for (const auto& [a, b] : g.arc_pairs_) {
      ++deg[a];
      ++deg[b];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
    g.nbrs_.resize(g.offsets_.back());
    std::vector<std::size_t> fill(n, 0);
    for (const auto& [a, b] : g.arc_pairs_) {
      const double w = distance(g.nodes_[a].pos, g.nodes_[b].pos);
      g.nbrs_[g.offsets_[a] + fill[a]++] = {b, w};
      g.nbrs_[g.offsets_[b] + fill[b]++] = {a, w};
    }
  }

  void build_boundary_loop() {
    auto& g = out.graph;
    const auto& cycle = t.boundary();
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const std::size_t a = cycle[i];
      const std::size_t b = cycle[(i + 1) % cycle.size()];
      g.boundary_loop_.push_back(a);
      const std::size_t e = t.edge_between(a, b);
      std::vector<std::pair<double, std::size_t>> on_edge;  // param from a
      const bool forward = (t.edges()[e].a == a);
      for (std::size_t i2 = 0; i2 < edge_nodes[e].size(); ++i2) {
        const double s =
            static_cast<double>(i2 + 1) / static_cast<double>(ms + 1);
        on_edge.push_back({forward ? s : 1.0 - s, edge_nodes[e][i2]});
      }
      for (const auto& [s, id] : edge_extras[e])
        on_edge.push_back({forward ? s : 1.0 - s, id});
      std::sort(on_edge.begin(), on_edge.end());
      for (const auto& [s, id] : on_edge) g.boundary_loop_.push_back(id);
    }
  }
};

SteinerBuild build_steiner_graph(const Terrain& t, std::size_t ms,
                                 const std::vector<SurfacePoint>& extras) {
  SteinerBuilder b(t, ms);
  b.build(extras);
  return std::move(b.out);
}

void SteinerGraph::validate() const {
  // every arc lies within some face and carries the 3D chord length
  std::vector<std::set<std::size_t>> faceset(nodes_.size());
  for (std::size_t f = 0; f < face_nodes_.size(); ++f)
    for (std::size_t id : face_nodes_[f]) faceset[id].insert(f);
  for (const auto& [a, b] : arc_pairs_) {
    bool shared = false;
    for (std::size_t f : faceset[a])
      if (faceset[b].count(f)) {
        shared = true;
        break;
      }
    if (!shared) throw std::logic_error("steiner arc endpoints share no face");
  }
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    auto [nb, cnt] = neighbors(id);
    for (std::size_t k = 0; k < cnt; ++k)
      if (!nearly_equal(nb[k].second, distance(nodes_[id].pos, nodes_[nb[k].first].pos)))
        throw std::logic_error("steiner arc weight differs from chord length");
  }
  // connectivity
  std::vector<bool> seen(nodes_.size(), false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    auto [nb, cnt] = neighbors(u);
    for (std::size_t k = 0; k < cnt; ++k)
      if (!seen[nb[k].first]) {
        seen[nb[k].first] = true;
        ++reached;
        q.push(nb[k].first);
      }
  }
  if (reached != nodes_.size())
    throw std::logic_error("steiner graph is not connected");
}

// ---- paths -----------------------------------------------------------------

std::size_t GeodesicPath::index_of(std::size_t node) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == node) return i;
  return kNoNode;
}

GeodesicPath GeodesicPath::reversed() const {
  GeodesicPath r;
  r.nodes.assign(nodes.rbegin(), nodes.rend());
  r.pts.assign(pts.rbegin(), pts.rend());
  r.prefix.resize(pts.size());
  for (std::size_t i = 0; i < r.pts.size(); ++i) {
    r.prefix[i] = (i == 0) ? 0.0 : r.prefix[i - 1] + distance(r.pts[i - 1], r.pts[i]);
  }
  return r;
}

GeodesicPath GeodesicPath::subpath(std::size_t i, std::size_t j) const {
  const bool rev = i > j;
  if (rev) std::swap(i, j);
  GeodesicPath s;
  s.nodes.assign(nodes.begin() + i, nodes.begin() + j + 1);
  s.pts.assign(pts.begin() + i, pts.begin() + j + 1);
  s.prefix.resize(s.pts.size());
  for (std::size_t k = 0; k < s.pts.size(); ++k) s.prefix[k] = prefix[i + k] - prefix[i];
  return rev ? s.reversed() : s;
}

std::vector<Vec2> GeodesicPath::projected() const {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.xy());
  return out;
}

std::string GeodesicPath::to_json() const {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const auto& p : pts) j["nodes"].push_back({p.x, p.y, p.z});
  j["length"] = length();
  return j.dump(2) + "\n";
}

ShortestPathTree shortest_path_tree(const SteinerGraph& sg, std::size_t source) {
  const std::size_t n = sg.node_count();
  ShortestPathTree t;
  t.source = source;
  t.dist.assign(n, std::numeric_limits<double>::infinity());
  t.pred.assign(n, kNoNode);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  t.dist[source] = 0.0;
  t.pred[source] = source;
  pq.push({0.0, source});
  std::vector<bool> done(n, false);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = true;
    auto [nb, cnt] = sg.neighbors(u);
    for (std::size_t k = 0; k < cnt; ++k) {
      const auto [v, w] = nb[k];
      const double nd = d + w;
      if (nd < t.dist[v]) {
        t.dist[v] = nd;
        t.pred[v] = u;
        pq.push({nd, v});
      } else if (nd == t.dist[v] && u < t.pred[v]) {
        t.pred[v] = u;  // deterministic path choice on exact ties
      }
    }
  }
  return t;
}

GeodesicPath ShortestPathTree::extract(const SteinerGraph& sg,
                                       std::size_t target) const {
  std::vector<std::size_t> chain;
  for (std::size_t v = target; v != source; v = pred[v]) {
    if (pred[v] == kNoNode) throw std::logic_error("target unreachable in sp tree");
    chain.push_back(v);
  }
  chain.push_back(source);
  std::reverse(chain.begin(), chain.end());
  GeodesicPath p;
  p.nodes = std::move(chain);
  p.pts.reserve(p.nodes.size());
  for (std::size_t id : p.nodes) p.pts.push_back(sg.node(id).pos);
  p.prefix.resize(p.pts.size());
  for (std::size_t i = 0; i < p.pts.size(); ++i)
    p.prefix[i] = (i == 0) ? 0.0 : p.prefix[i - 1] + distance(p.pts[i - 1], p.pts[i]);
  return p;
}

std::vector<double> all_distances(const SteinerGraph& sg, std::size_t source) {
  return shortest_path_tree(sg, source).dist;
}

std::vector<std::vector<double>> sg_distance_rows_serial(
    const SteinerGraph& sg, const std::vector<std::size_t>& sources) {
  std::vector<std::vector<double>> rows(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i)
    rows[i] = all_distances(sg, sources[i]);
  return rows;
}

std::vector<std::vector<double>> sg_distance_rows(
    const SteinerGraph& sg, const std::vector<std::size_t>& sources) {
  std::vector<std::vector<double>> rows(sources.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < sources.size(); ++i)
    rows[i] = all_distances(sg, sources[i]);
  return rows;
}

std::pair<double, GeodesicPath> geodesic_distance(const SteinerGraph& sg,
                                                  std::size_t a, std::size_t b) {
  if (a >= sg.node_count() || b >= sg.node_count())
    throw std::invalid_argument("geodesic_distance: node out of range");
  const std::size_t s = std::min(a, b), t = std::max(a, b);
  const auto tree = shortest_path_tree(sg, s);
  GeodesicPath p = tree.extract(sg, t);
  const double d = tree.dist[t];
  if (a > b) p = p.reversed();
  return {d, p};
}

ClosestOnPath closest_on_path(const SteinerGraph& sg, std::size_t p,
                              const GeodesicPath& sigma,
                              std::optional<std::pair<double, double>> interval) {
  if (sigma.nodes.empty())
    throw std::invalid_argument("closest_on_path: empty path");
  const auto dist = all_distances(sg, p);
  ClosestOnPath best;
  bool found = false;
  for (std::size_t i = 0; i < sigma.nodes.size(); ++i) {
    const double pos = sigma.prefix[i];
    if (interval && (pos < interval->first - kCoincideTol ||
                     pos > interval->second + kCoincideTol))
      continue;
    const double d = dist[sigma.nodes[i]];
    if (!found || d < best.dist) {
      best = {i, sigma.nodes[i], d, pos};
      found = true;
    }
  }
  if (!found)
    throw std::invalid_argument("closest_on_path: interval contains no node");
  return best;
}

// ---- sidedness -------------------------------------------------------------

namespace {

// Arc-length style parameter of a point on the boundary cycle: segment
// index plus fractional position. Throws when x is not on the boundary.
double boundary_param(const Terrain& t, const Vec2& x, double tol) {
  const auto& cycle = t.boundary();
  const std::size_t m = cycle.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 a = t.vertices()[cycle[i]].xy();
    const Vec2 b = t.vertices()[cycle[(i + 1) % m]].xy();
    if (point_segment_distance(x, a, b) > tol) continue;
    const Vec2 ab = b - a;
    const double len2 = ab.dot(ab);
    const double s = len2 == 0.0 ? 0.0 : std::clamp((x - a).dot(ab) / len2, 0.0, 1.0);
    return static_cast<double>(i) + s;
  }
  throw std::invalid_argument("path endpoint does not lie on the terrain boundary");
}

}  // namespace

std::vector<Vec2> right_region_polygon(const Terrain& t, const GeodesicPath& sigma) {
  constexpr double tol = 1e-9;
  std::vector<Vec2> poly = sigma.projected();
  if (sigma.size() < 2) return poly;

  const auto& cycle = t.boundary();
  const double m = static_cast<double>(cycle.size());
  const double pu = boundary_param(t, poly.front(), tol);
  const double pv = boundary_param(t, poly.back(), tol);

  // walk clockwise (decreasing parameter) from the path end back to its start
  const double span = std::fmod(pv - pu + m, m);
  double walked = 0.0;
  double cur = pv;
  while (true) {
    double corner = (cur == std::floor(cur)) ? cur - 1.0 : std::floor(cur);
    if (corner < 0.0) corner += m;
    const double step = std::fmod(cur - corner + m, m);
    if (walked + step >= span - 1e-12) break;
    walked += step;
    poly.push_back(t.vertices()[cycle[static_cast<std::size_t>(corner + 0.5)]].xy());
    cur = corner;
  }
  return poly;
}

Side classify_side(const Terrain& t, const GeodesicPath& sigma, const Vec2& q,
                   double tol) {
  const auto line = sigma.projected();
  if (point_polyline_distance(q, line) <= tol) return Side::On;
  if (sigma.size() < 2) return Side::Left;  // trivial path: empty right region

  const auto poly = right_region_polygon(t, sigma);
  // the clockwise return arc belongs to the closed right region
  std::vector<Vec2> arc(poly.begin() + static_cast<long>(sigma.size()) - 1,
                        poly.end());
  arc.push_back(poly.front());
  if (point_polyline_distance(q, arc) <= tol) return Side::Right;
  return point_in_polygon(q, poly) ? Side::Right : Side::Left;
}

// ---- projection sets -------------------------------------------------------

bool ProjectionSet::in_window(double arc_pos) const {
  return arc_pos >= window_lo - kCoincideTol && arc_pos <= window_hi + kCoincideTol;
}

std::optional<ProjectionRep> ProjectionSet::rep_for(double pos) const {
  if (!in_window(pos) || reps.empty()) return std::nullopt;
  // pieces are disjoint [lo,hi) intervals covering the window
  for (const auto& r : reps)
    if (pos >= r.piece_lo - kCoincideTol && pos < r.piece_hi + kCoincideTol)
      return r;
  // position falls into an unoccupied piece: closest rep by arc distance
  const ProjectionRep* best = &reps.front();
  for (const auto& r : reps)
    if (std::fabs(r.arc_pos - pos) < std::fabs(best->arc_pos - pos)) best = &r;
  return *best;
}

ProjectionSet build_projection_set(const SteinerGraph& /*sg*/,
                                   const std::vector<double>& dist_from_p,
                                   std::size_t p, const GeodesicPath& sigma,
                                   double eps2) {
  if (!(eps2 > 0.0))
    throw std::invalid_argument("build_projection_set: eps2 must be > 0");
  if (sigma.nodes.empty())
    throw std::invalid_argument("build_projection_set: empty path");

  ProjectionSet ps;
  ps.source_node = p;
  // base node: closest on sigma, ties to the smaller arc position
  for (std::size_t i = 0; i < sigma.nodes.size(); ++i) {
    const double d = dist_from_p[sigma.nodes[i]];
    if (i == 0 || d < ps.base_weight) {
      ps.base_index = i;
      ps.base_node = sigma.nodes[i];
      ps.base_weight = d;
      ps.base_pos = sigma.prefix[i];
    }
  }

  if (ps.base_weight <= 0.0) {
    ps.window_lo = ps.window_hi = ps.base_pos;
    ps.reps.push_back({ps.base_index, ps.base_node, 0.0, ps.base_pos, ps.base_pos,
                       ps.base_pos});
    return ps;
  }

  const double radius = (1.0 + 2.0 / eps2) * ps.base_weight;
  ps.window_lo = std::max(0.0, ps.base_pos - radius);
  ps.window_hi = std::min(sigma.length(), ps.base_pos + radius);

  const double span = ps.window_hi - ps.window_lo;
  const double max_piece = eps2 * ps.base_weight;
  const std::size_t pieces =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / max_piece)));
  const double len = span / static_cast<double>(pieces);

  std::vector<std::size_t> rep_of_piece(pieces, kNoNode);
  for (std::size_t i = 0; i < sigma.nodes.size(); ++i) {
    const double pos = sigma.prefix[i];
    if (!ps.in_window(pos)) continue;
    std::size_t piece =
        len > 0.0 ? static_cast<std::size_t>((pos - ps.window_lo) / len) : 0;
    piece = std::min(piece, pieces - 1);
    const std::size_t cur = rep_of_piece[piece];
    if (cur == kNoNode || dist_from_p[sigma.nodes[i]] < dist_from_p[sigma.nodes[cur]])
      rep_of_piece[piece] = i;
  }
  for (std::size_t piece = 0; piece < pieces; ++piece) {
    const std::size_t i = rep_of_piece[piece];
    if (i == kNoNode) continue;
    ps.reps.push_back({i, sigma.nodes[i], dist_from_p[sigma.nodes[i]],
                       sigma.prefix[i], ps.window_lo + piece * len,
                       ps.window_lo + (piece + 1) * len});
  }
  return ps;
}

ProjectionSet build_projection_set(const SteinerGraph& sg, std::size_t p,
                                   const GeodesicPath& sigma, double eps2) {
  return build_projection_set(sg, all_distances(sg, p), p, sigma, eps2);
}

void validate_path(const SteinerGraph& sg, const GeodesicPath& path) {
  if (path.nodes.empty()) throw std::logic_error("empty path");
  std::set<std::size_t> seen(path.nodes.begin(), path.nodes.end());
  if (seen.size() != path.nodes.size())
    throw std::logic_error("path repeats a node");
  std::vector<std::set<std::size_t>> faceset(sg.node_count());
  for (std::size_t f = 0; f < sg.face_nodes().size(); ++f)
    for (std::size_t id : sg.face_nodes()[f]) faceset[id].insert(f);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
    bool shared = false;
    for (std::size_t f : faceset[path.nodes[i]])
      if (faceset[path.nodes[i + 1]].count(f)) {
        shared = true;
        break;
      }
    if (!shared) throw std::logic_error("consecutive path nodes share no face");
    acc += distance(path.pts[i], path.pts[i + 1]);
    if (!nearly_equal(acc, path.prefix[i + 1]))
      throw std::logic_error("path prefix lengths inconsistent");
  }
}

}  // namespace geospan
