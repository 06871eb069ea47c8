#include "geospan/separator.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "geospan/common.hpp"
#include "json.hpp"

namespace geospan {

namespace {

constexpr double kOnTol = 1e-9;

}  // namespace

std::size_t balance_lo(std::size_t n) { return (2 * n + 8) / 9; }
std::size_t balance_hi(std::size_t n) { return (2 * n) / 3; }

// ---- instance preparation --------------------------------------------------

TerrainInstance prepare_instance(const Terrain& t, std::size_t ms,
                                 const std::vector<Vec2>& pts) {
  std::vector<SurfacePoint> sps;
  sps.reserve(pts.size());
  for (const auto& p : pts) sps.push_back(t.locate(p.x, p.y));

  auto assemble = [&](const std::vector<SurfacePoint>& extras) {
    TerrainInstance inst;
    auto built = build_steiner_graph(t, ms, extras);
    inst.sg = std::move(built.graph);
    inst.points.surface = sps;
    inst.points.nodes.assign(built.embedded.begin(),
                             built.embedded.begin() + sps.size());
    for (const auto& sp : sps) inst.points.xy.push_back(t.projected(sp));
    return inst;
  };

  TerrainInstance inst = assemble(sps);

  // guarantee a sweep origin: some boundary node free of input points
  std::set<std::size_t> occupied(inst.points.nodes.begin(), inst.points.nodes.end());
  bool free_node = false;
  for (std::size_t b : inst.sg.boundary_loop())
    if (!occupied.count(b)) {
      free_node = true;
      break;
    }
  if (!free_node) {
    const auto& cycle = t.boundary();
    const Vec3 a = t.vertices()[cycle[0]];
    const Vec3 b = t.vertices()[cycle[1]];
    const Vec3 mid = a + (b - a) * 0.43;  // off-center, avoids Steiner grid hits
    auto extras = sps;
    extras.push_back(t.locate(mid.x, mid.y));
    inst = assemble(extras);
  }
  return inst;
}

// ---- membership ------------------------------------------------------------

bool point_on_path(const LocatedPoints& pts, std::size_t point,
                   const GeodesicPath& path, double tol) {
  if (path.contains(pts.nodes[point])) return true;
  return point_polyline_distance(pts.xy[point], path.projected()) <= tol;
}

namespace {

// Closed polygon of an sp-triangle (sides must form an oriented cycle).
std::vector<Vec2> triangle_polygon(const std::vector<GeodesicPath>& sides) {
  std::vector<Vec2> poly;
  for (const auto& s : sides) {
    const auto line = s.projected();
    for (std::size_t i = poly.empty() ? 0 : 1; i < line.size(); ++i)
      poly.push_back(line[i]);
  }
  if (poly.size() > 1) poly.pop_back();  // cycle closes onto the first vertex
  return poly;
}

// Orders 3 sides into an oriented cycle, reversing as needed.
std::vector<GeodesicPath> normalize_cycle(std::vector<GeodesicPath> sides) {
  if (sides.size() != 3) return sides;
  for (int flip0 = 0; flip0 < 2; ++flip0) {
    for (std::size_t second = 1; second <= 2; ++second) {
      std::vector<GeodesicPath> c;
      c.push_back(flip0 ? sides[0].reversed() : sides[0]);
      GeodesicPath s1 = sides[second];
      GeodesicPath s2 = sides[3 - second];
      if (s1.front() != c[0].back()) s1 = s1.reversed();
      if (s1.front() != c[0].back()) continue;
      c.push_back(s1);
      if (s2.front() != c[1].back()) s2 = s2.reversed();
      if (s2.front() != c[1].back() || s2.back() != c[0].front()) continue;
      c.push_back(s2);
      return c;
    }
  }
  throw std::runtime_error("separator sides do not form a cycle");
}

// Sides must form an oriented cycle, be simple, and pairwise share nodes
// only at endpoints of both ("pairwise disjoint except at shared endpoints").
bool triangle_sides_ok(const std::vector<GeodesicPath>& sides) {
  if (sides.size() != 3) return false;
  for (const auto& s : sides) {
    if (s.size() < 2) return false;
    std::set<std::size_t> uniq(s.nodes.begin(), s.nodes.end());
    if (uniq.size() != s.nodes.size()) return false;
  }
  for (int i = 0; i < 3; ++i)
    if (sides[i].back() != sides[(i + 1) % 3].front()) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      std::set<std::size_t> si(sides[i].nodes.begin(), sides[i].nodes.end());
      for (std::size_t id : sides[j].nodes) {
        if (!si.count(id)) continue;
        const bool corner_i = id == sides[i].front() || id == sides[i].back();
        const bool corner_j = id == sides[j].front() || id == sides[j].back();
        if (!corner_i || !corner_j) return false;
      }
    }
  return true;
}

struct TriangleCounts {
  std::vector<std::size_t> inside;    // closed region
  std::vector<std::size_t> interior;  // inside minus on-side
};

TriangleCounts count_triangle(const LocatedPoints& pts,
                              const std::vector<std::size_t>& subset,
                              const std::vector<GeodesicPath>& sides) {
  TriangleCounts out;
  const auto poly = triangle_polygon(sides);
  for (std::size_t p : subset) {
    bool on = false;
    for (const auto& s : sides)
      if (point_on_path(pts, p, s)) {
        on = true;
        break;
      }
    if (on) {
      out.inside.push_back(p);
    } else if (poly.size() >= 3 && point_in_polygon(pts.xy[p], poly)) {
      out.inside.push_back(p);
      out.interior.push_back(p);
    }
  }
  return out;
}

}  // namespace

std::vector<std::size_t> points_inside_separator(
    const SteinerGraph& /*sg*/, const Terrain& t, const LocatedPoints& pts,
    const std::vector<std::size_t>& subset, const Separator& sep) {
  std::vector<std::size_t> in;
  if (sep.kind == Separator::Kind::Path) {
    for (std::size_t p : subset)
      if (classify_side(t, sep.sides[0], pts.xy[p]) != Side::Left) in.push_back(p);
  } else if (sep.sides.size() == 1) {
    for (std::size_t p : subset)
      if (point_on_path(pts, p, sep.sides[0])) in.push_back(p);
  } else {
    in = count_triangle(pts, subset, sep.sides).inside;
  }
  return in;
}

// ---- sweep -----------------------------------------------------------------

namespace {

GeodesicPath trivial_path(const SteinerGraph& sg, std::size_t node) {
  GeodesicPath p;
  p.nodes = {node};
  p.pts = {sg.node(node).pos};
  p.prefix = {0.0};
  return p;
}

std::vector<std::size_t> classify_inside(const Terrain& t, const LocatedPoints& pts,
                                         const std::vector<std::size_t>& subset,
                                         const GeodesicPath& sigma) {
  std::vector<std::size_t> in;
  for (std::size_t p : subset)
    if (classify_side(t, sigma, pts.xy[p]) != Side::Left) in.push_back(p);
  return in;
}

}  // namespace

SweepResult sweep_path_separator(const SteinerGraph& sg, const Terrain& t,
                                 const LocatedPoints& pts,
                                 const std::vector<std::size_t>& subset,
                                 std::size_t u) {
  for (std::size_t p : subset)
    if (pts.nodes[p] == u)
      throw std::invalid_argument("sweep origin coincides with an input point");

  const std::size_t n = subset.size();
  const std::size_t lo = balance_lo(n), hi = balance_hi(n);
  const auto& loop = sg.boundary_loop();
  const auto it = std::find(loop.begin(), loop.end(), u);
  if (it == loop.end())
    throw std::invalid_argument("sweep origin is not a boundary node");
  const std::size_t start = static_cast<std::size_t>(it - loop.begin());

  const auto tree = shortest_path_tree(sg, u);

  SweepResult res;
  std::size_t prev_v = kNoNode;
  std::size_t prev_count = 0;
  GeodesicPath prev_path = trivial_path(sg, u);

  for (std::size_t k = 1; k < loop.size(); ++k) {
    const std::size_t v = loop[(start + k) % loop.size()];
    GeodesicPath sigma = tree.extract(sg, v);
    const auto in = classify_inside(t, pts, subset, sigma);
    const std::size_t count = in.size();
    res.counts.push_back(count);
    if (count >= lo && count <= hi) {
      Separator sep;
      sep.kind = Separator::Kind::Path;
      sep.sides = {sigma};
      sep.inside = in;
      res.balanced = std::move(sep);
      return res;
    }
    if (prev_count < lo && count > hi) {
      res.jump = JumpRecord{prev_v, v, std::move(prev_path), std::move(sigma)};
      return res;
    }
    if (count < prev_count) ++res.nonmonotone_steps;
    prev_v = v;
    prev_count = count;
    prev_path = std::move(sigma);
  }
  return res;  // neither outcome: caller falls back (not expected)
}

// ---- triangle refinement ---------------------------------------------------

namespace {

// Degenerate sp-triangle: prefix of `path` holding ceil(2n/9) on-path points.
Separator subpath_with_quota(const LocatedPoints& pts,
                             const std::vector<std::size_t>& subset,
                             const GeodesicPath& path) {
  const std::size_t n = subset.size();
  const std::size_t lo = balance_lo(n), hi = balance_hi(n);

  std::vector<std::pair<double, std::size_t>> on;  // (arc position, point)
  for (std::size_t p : subset) {
    if (!point_on_path(pts, p, path)) continue;
    const std::size_t idx = path.index_of(pts.nodes[p]);
    double pos;
    if (idx != kNoNode) {
      pos = path.prefix[idx];
    } else {
      // geometric hit: nearest polyline position
      pos = 0.0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < path.pts.size(); ++i) {
        const Vec2 a = path.pts[i].xy(), b = path.pts[i + 1].xy();
        const double d = point_segment_distance(pts.xy[p], a, b);
        if (d < best) {
          best = d;
          const Vec2 ab = b - a;
          const double len2 = ab.dot(ab);
          const double s =
              len2 == 0.0 ? 0.0
                          : std::clamp((pts.xy[p] - a).dot(ab) / len2, 0.0, 1.0);
          pos = path.prefix[i] + s * (path.prefix[i + 1] - path.prefix[i]);
        }
      }
    }
    on.push_back({pos, p});
  }
  if (on.size() < lo)
    throw std::runtime_error("subpath selection: not enough on-path points");
  std::sort(on.begin(), on.end());

  const double cut_pos = on[lo - 1].first;
  std::size_t cut_idx = path.size() - 1;
  for (std::size_t i = 0; i < path.size(); ++i)
    if (path.prefix[i] >= cut_pos - kOnTol) {
      cut_idx = i;
      break;
    }

  Separator sep;
  sep.kind = Separator::Kind::Triangle;
  sep.sides = {path.subpath(0, cut_idx)};
  for (std::size_t p : subset)
    if (point_on_path(pts, p, sep.sides[0])) sep.inside.push_back(p);
  if (sep.inside.size() < lo || sep.inside.size() > hi)
    throw std::runtime_error("subpath selection: quota not met after cut");
  return sep;
}

// Dijkstra restricted to allowed nodes and non-crossing arcs, same
// deterministic tie rule as the unconstrained tree.
ShortestPathTree constrained_tree(const SteinerGraph& sg,
                                  const std::vector<bool>& allowed,
                                  const std::vector<std::vector<Vec2>>& walls,
                                  std::size_t source) {
  const std::size_t n = sg.node_count();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& [a, b] : sg.arcs()) {
    if (!allowed[a] || !allowed[b]) continue;
    const Vec2 pa = sg.xy(a), pb = sg.xy(b);
    bool crossing = false;
    for (const auto& wall : walls) {
      for (std::size_t i = 0; i + 1 < wall.size() && !crossing; ++i)
        if (segments_properly_intersect(pa, pb, wall[i], wall[i + 1]))
          crossing = true;
      if (crossing) break;
    }
    if (crossing) continue;
    const double w = distance(sg.node(a).pos, sg.node(b).pos);
    adj[a].push_back({b, w});
    adj[b].push_back({a, w});
  }

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
    auto [d, x] = pq.top();
    pq.pop();
    if (done[x]) continue;
    done[x] = true;
    for (const auto& [y, w] : adj[x]) {
      const double nd = d + w;
      if (nd < t.dist[y]) {
        t.dist[y] = nd;
        t.pred[y] = x;
        pq.push({nd, y});
      } else if (nd == t.dist[y] && x < t.pred[y]) {
        t.pred[y] = x;
      }
    }
  }
  return t;
}

std::size_t divergence_index(const GeodesicPath& a, const GeodesicPath& b) {
  std::size_t i = 0;
  while (i + 1 < a.size() && i + 1 < b.size() && a.nodes[i + 1] == b.nodes[i + 1])
    ++i;
  return i;
}

// Fan split at an interior point: candidate sub-triangles from the
// constrained shortest-path tree of p toward each corner pair.
std::vector<std::vector<GeodesicPath>> interior_split_candidates(
    const SteinerGraph& sg, const LocatedPoints& pts, std::size_t p,
    const std::vector<GeodesicPath>& sides) {
  const auto poly = triangle_polygon(sides);
  std::vector<std::vector<Vec2>> walls;
  for (const auto& s : sides) walls.push_back(s.projected());

  std::vector<bool> allowed(sg.node_count(), false);
  for (std::size_t id = 0; id < sg.node_count(); ++id) {
    const Vec2 q = sg.xy(id);
    bool on = false;
    for (const auto& wall : walls)
      if (point_polyline_distance(q, wall) <= kOnTol) {
        on = true;
        break;
      }
    allowed[id] = on || point_in_polygon(q, poly);
  }

  const std::size_t pnode = pts.nodes[p];
  const auto tree = constrained_tree(sg, allowed, walls, pnode);

  std::vector<std::vector<GeodesicPath>> candidates;
  for (int i = 0; i < 3; ++i) {
    const auto& base = sides[i];  // connects corner X = base.front() to Y = base.back()
    const std::size_t X = base.front(), Y = base.back();
    if (!std::isfinite(tree.dist[X]) || !std::isfinite(tree.dist[Y])) continue;
    GeodesicPath to_x = tree.extract(sg, X);
    GeodesicPath to_y = tree.extract(sg, Y);
    const std::size_t div = divergence_index(to_x, to_y);
    GeodesicPath tail_x = to_x.subpath(div, to_x.size() - 1);
    GeodesicPath tail_y = to_y.subpath(div, to_y.size() - 1);
    if (tail_x.size() < 2 || tail_y.size() < 2) continue;

    // truncate each tail at its first node on the base side
    auto truncate = [&](GeodesicPath& tail) -> bool {
      for (std::size_t k = 1; k < tail.size(); ++k)
        if (base.contains(tail.nodes[k])) {
          tail = tail.subpath(0, k);
          return true;
        }
      return false;
    };
    if (!truncate(tail_x) || !truncate(tail_y)) continue;
    const std::size_t xi = base.index_of(tail_x.back());
    const std::size_t yi = base.index_of(tail_y.back());
    if (xi == yi) continue;  // tails meet the side at one node: no area

    std::vector<GeodesicPath> cand;
    cand.push_back(tail_x);                      // z -> X'
    cand.push_back(base.subpath(xi, yi));        // X' -> Y'
    cand.push_back(tail_y.reversed());           // Y' -> z
    if (!triangle_sides_ok(cand)) continue;
    candidates.push_back(std::move(cand));
  }
  return candidates;
}

}  // namespace

Separator refine_triangle(const SteinerGraph& sg, const Terrain& /*t*/,
                          const LocatedPoints& pts,
                          const std::vector<std::size_t>& subset,
                          const std::vector<GeodesicPath>& triangle_sides) {
  const std::size_t n = subset.size();
  const std::size_t lo = balance_lo(n), hi = balance_hi(n);

  std::vector<GeodesicPath> sides = triangle_sides;
  if (sides.size() == 3) sides = normalize_cycle(std::move(sides));

  const std::size_t cap = 3 * n + 60;
  for (std::size_t iter = 0; iter < cap; ++iter) {
    if (sides.size() == 1) {
      // degenerate sp-triangle: one shortest path
      std::vector<std::size_t> on;
      for (std::size_t p : subset)
        if (point_on_path(pts, p, sides[0])) on.push_back(p);
      if (on.size() < lo)
        throw std::runtime_error("refine: degenerate triangle lost the invariant");
      if (on.size() <= hi) {
        Separator sep;
        sep.kind = Separator::Kind::Triangle;
        sep.sides = sides;
        sep.inside = on;
        return sep;
      }
      return subpath_with_quota(pts, subset, sides[0]);
    }

    const auto counts = count_triangle(pts, subset, sides);
    if (counts.inside.size() < lo)
      throw std::runtime_error("refine: triangle lost the 2n/9 invariant");
    if (counts.inside.size() <= hi) {
      Separator sep;
      sep.kind = Separator::Kind::Triangle;
      sep.sides = sides;
      sep.inside = counts.inside;
      return sep;
    }

    // heavy side: finish with a subpath of that side
    for (const auto& s : sides) {
      std::size_t on = 0;
      for (std::size_t p : subset)
        if (point_on_path(pts, p, s)) ++on;
      if (on >= lo) return subpath_with_quota(pts, subset, s);
    }

    if (counts.interior.empty())
      throw std::runtime_error("refine: no interior point although all sides are light");
    const std::size_t p = *std::min_element(counts.interior.begin(),
                                            counts.interior.end());

    auto candidates = interior_split_candidates(sg, pts, p, sides);
    std::vector<GeodesicPath>* best = nullptr;
    std::size_t best_count = 0;
    std::vector<TriangleCounts> cand_counts(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      cand_counts[c] = count_triangle(pts, subset, candidates[c]);
      const auto& cc = cand_counts[c];
      if (cc.inside.size() < lo) continue;
      const bool progress = cc.inside.size() < counts.inside.size() ||
                            cc.interior.size() < counts.interior.size();
      if (!progress) continue;
      if (cc.inside.size() > best_count) {
        best_count = cc.inside.size();
        best = &candidates[c];
      }
    }
    if (!best)
      throw std::runtime_error("refine: interior split produced no valid sub-triangle");
    sides = *best;
  }
  throw std::runtime_error("refine: iteration cap exceeded");
}

// ---- jump handling and the top-level search --------------------------------

namespace {

GeodesicPath micro_arc(const SteinerGraph& sg, std::size_t a, std::size_t b) {
  GeodesicPath p;
  p.nodes = {a, b};
  p.pts = {sg.node(a).pos, sg.node(b).pos};
  p.prefix = {0.0, distance(p.pts[0], p.pts[1])};
  return p;
}

// Builds the sp-triangle around the region a jump swallowed. May return a
// degenerate (single-path) triangle when the region has no area.
std::vector<GeodesicPath> jump_triangle(const SteinerGraph& sg,
                                        const JumpRecord& jump) {
  const GeodesicPath& sig = jump.sigma;
  const GeodesicPath& sig2 = jump.sigma_prime;
  if (sig.front() != sig2.front())
    throw std::logic_error("jump paths share no origin");
  const std::size_t div = divergence_index(sig, sig2);
  GeodesicPath suffix = sig.subpath(div, sig.size() - 1);
  GeodesicPath suffix2 = sig2.subpath(div, sig2.size() - 1);

  if (suffix.size() >= 2 && suffix2.size() >= 2) {
    // corners: divergence node, the two sweep positions
    return {suffix, micro_arc(sg, suffix.back(), suffix2.back()),
            suffix2.reversed()};
  }
  // one path is a prefix of the other: lens between the longer suffix and
  // the boundary micro arc
  GeodesicPath lens = suffix.size() >= 2 ? suffix : suffix2;
  if (lens.size() >= 3) {
    const std::size_t mid = lens.size() / 2;
    return {lens.subpath(0, mid), lens.subpath(mid, lens.size() - 1),
            micro_arc(sg, lens.back(), lens.front())};
  }
  // zero-area jump: everything gained sits on the longer path itself
  return {sig2};
}

Separator exhaustive_fallback(const SteinerGraph& sg, const Terrain& t,
                              const LocatedPoints& pts,
                              const std::vector<std::size_t>& subset) {
  const std::size_t n = subset.size();
  const std::size_t lo = balance_lo(n), hi = balance_hi(n);
  const auto& loop = sg.boundary_loop();

  std::map<std::size_t, ShortestPathTree> trees;
  auto tree_from = [&](std::size_t s) -> const ShortestPathTree& {
    auto it = trees.find(s);
    if (it == trees.end()) it = trees.emplace(s, shortest_path_tree(sg, s)).first;
    return it->second;
  };

  // all boundary pairs as path separators, both directions
  for (std::size_t i = 0; i < loop.size(); ++i)
    for (std::size_t j = 0; j < loop.size(); ++j) {
      if (i == j) continue;
      const std::size_t a = loop[i], b = loop[j];
      GeodesicPath sigma = tree_from(a).extract(sg, b);
      const auto in = classify_inside(t, pts, subset, sigma);
      if (in.size() < lo || in.size() > hi) continue;
      Separator sep;
      sep.kind = Separator::Kind::Path;
      sep.sides = {std::move(sigma)};
      sep.inside = in;
      sep.used_fallback = true;
      return sep;
    }

  // triangles with two boundary corners and one point corner
  for (std::size_t i = 0; i < loop.size(); ++i)
    for (std::size_t j = i + 1; j < loop.size(); ++j)
      for (std::size_t p : subset) {
        const std::size_t a = loop[i], b = loop[j], w = pts.nodes[p];
        if (w == a || w == b) continue;
        std::vector<GeodesicPath> sides;
        sides.push_back(tree_from(a).extract(sg, b));
        sides.push_back(tree_from(b).extract(sg, w));
        sides.push_back(tree_from(w).extract(sg, a));
        if (!triangle_sides_ok(sides)) continue;
        const auto counts = count_triangle(pts, subset, sides);
        if (counts.inside.size() < lo || counts.inside.size() > hi) continue;
        Separator sep;
        sep.kind = Separator::Kind::Triangle;
        sep.sides = std::move(sides);
        sep.inside = counts.inside;
        sep.used_fallback = true;
        return sep;
      }
  throw std::runtime_error("separator fallback exhausted all candidates");
}

std::size_t choose_sweep_origin(const SteinerGraph& sg, const LocatedPoints& pts,
                                const std::vector<std::size_t>& subset) {
  std::set<std::size_t> occupied;
  for (std::size_t p : subset) occupied.insert(pts.nodes[p]);
  for (std::size_t b : sg.boundary_loop()) {
    if (occupied.count(b)) continue;
    bool hit = false;
    for (std::size_t p : subset)
      if (distance(pts.xy[p], sg.xy(b)) <= kOnTol) {
        hit = true;
        break;
      }
    if (!hit) return b;
  }
  throw std::runtime_error("no free boundary node for the sweep origin");
}

}  // namespace

void check_separator(const SteinerGraph& sg, const Terrain& t,
                     const LocatedPoints& pts,
                     const std::vector<std::size_t>& subset,
                     const Separator& sep) {
  const std::size_t n = subset.size();
  if (sep.inside.size() < balance_lo(n) || sep.inside.size() > balance_hi(n))
    throw std::runtime_error("separator balance violated: inside=" +
                             std::to_string(sep.inside.size()) + " of n=" +
                             std::to_string(n));
  for (const auto& s : sep.sides) {
    validate_path(sg, s);
    const double d = geodesic_distance(sg, s.front(), s.back()).first;
    if (!nearly_equal(d, s.length()))
      throw std::runtime_error("separator side is not a shortest path");
  }
  if (sep.kind == Separator::Kind::Path) {
    if (!sg.node(sep.sides[0].front()).on_boundary ||
        !sg.node(sep.sides[0].back()).on_boundary)
      throw std::runtime_error("path separator endpoints are not boundary nodes");
  } else if (sep.sides.size() == 3 && !triangle_sides_ok(sep.sides)) {
    throw std::runtime_error("sp-triangle sides are not pairwise disjoint");
  }
  const auto recount = points_inside_separator(sg, t, pts, subset, sep);
  if (recount != sep.inside)
    throw std::runtime_error("separator inside set does not match a recount");
}

Separator find_balanced_separator(const SteinerGraph& sg, const Terrain& t,
                                  const LocatedPoints& pts,
                                  const std::vector<std::size_t>& subset) {
  if (subset.size() < 5)
    throw std::invalid_argument("find_balanced_separator requires n >= 5");

  try {
    const std::size_t u = choose_sweep_origin(sg, pts, subset);
    SweepResult sw = sweep_path_separator(sg, t, pts, subset, u);
    if (sw.balanced) {
      check_separator(sg, t, pts, subset, *sw.balanced);
      return *sw.balanced;
    }
    if (sw.jump) {
      auto sides = jump_triangle(sg, *sw.jump);
      Separator sep = refine_triangle(sg, t, pts, subset, sides);
      check_separator(sg, t, pts, subset, sep);
      return sep;
    }
    throw std::runtime_error("sweep produced neither a separator nor a jump");
  } catch (const std::runtime_error& e) {
    std::cerr << "[separator] primary search failed (" << e.what()
              << "); using exhaustive fallback\n";
  }
  Separator sep = exhaustive_fallback(sg, t, pts, subset);
  check_separator(sg, t, pts, subset, sep);
  return sep;
}

std::string Separator::to_json() const {
  nlohmann::json j;
  j["type"] = kind == Kind::Path ? "path" : "triangle";
  j["polylines"] = nlohmann::json::array();
  for (const auto& s : sides) {
    nlohmann::json line = nlohmann::json::array();
    for (const auto& p : s.pts) line.push_back({p.x, p.y, p.z});
    j["polylines"].push_back(line);
  }
  j["inside"] = inside;
  return j.dump(2) + "\n";
}

}  // namespace geospan
