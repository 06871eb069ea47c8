#include "geospan/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "geospan/common.hpp"
#include "json.hpp"

namespace geospan {

namespace {

double tri_signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * (b - a).cross(c - a);
}

}  // namespace

Terrain::Terrain(std::vector<Vec3> vertices,
                 std::vector<std::array<std::size_t, 3>> tris)
    : verts_(std::move(vertices)), tris_(std::move(tris)) {
  if (tris_.empty())
    throw TerrainError(TerrainError::Kind::BadFile, "terrain has no triangles");
  for (auto& t : tris_) {
    for (std::size_t k : t)
      if (k >= verts_.size())
        throw TerrainError(TerrainError::Kind::BadFile,
                           "triangle vertex index out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw TerrainError(TerrainError::Kind::DegenerateFace,
                         "triangle with repeated vertex");
    // normalize winding to counterclockwise in projection
    const double area = tri_signed_area(verts_[t[0]].xy(), verts_[t[1]].xy(),
                                        verts_[t[2]].xy());
    if (area == 0.0)
      throw TerrainError(TerrainError::Kind::DegenerateFace,
                         "triangle with zero projected area");
    if (area < 0.0) std::swap(t[1], t[2]);
  }
  check_projection();
  build_edges();
  build_boundary();

  // Euler characteristic of a disk: V - E + F = 1
  if (verts_.size() + tris_.size() != edges_.size() + 1)
    throw TerrainError(TerrainError::Kind::NotADisk,
                       "mesh is not a topological disk (V - E + F != 1)");
}

void Terrain::check_projection() {
  std::vector<std::size_t> order(verts_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(verts_[a].x, verts_[a].y) < std::tie(verts_[b].x, verts_[b].y);
  });
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const Vec3& p = verts_[order[k]];
    const Vec3& q = verts_[order[k + 1]];
    if (p.x == q.x && p.y == q.y && p.z != q.z)
      throw TerrainError(TerrainError::Kind::NonInjectiveProjection,
                         "two vertices share (x,y) with different heights");
  }
}

void Terrain::build_edges() {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t f = 0; f < tris_.size(); ++f) {
    const auto& t = tris_[f];
    for (int k = 0; k < 3; ++k) {
      const auto key = std::minmax(t[k], t[(k + 1) % 3]);
      auto it = index.find(key);
      if (it == index.end()) {
        index.emplace(key, edges_.size());
        edges_.push_back({key.first, key.second, f, EdgeInfo::kNone});
      } else {
        EdgeInfo& e = edges_[it->second];
        if (e.face1 != EdgeInfo::kNone)
          throw TerrainError(TerrainError::Kind::NonManifoldEdge,
                             "edge (" + std::to_string(key.first) + "," +
                                 std::to_string(key.second) +
                                 ") is shared by more than two triangles");
        e.face1 = f;
      }
    }
  }
  // local fold check: the two faces of an interior edge must lie on
  // opposite sides of the edge in projection
  for (const auto& e : edges_) {
    if (e.boundary()) continue;
    auto opposite = [&](std::size_t f) {
      for (std::size_t k : tris_[f])
        if (k != e.a && k != e.b) return k;
      return EdgeInfo::kNone;
    };
    const Vec2 a = verts_[e.a].xy(), b = verts_[e.b].xy();
    const double s0 = tri_signed_area(a, b, verts_[opposite(e.face0)].xy());
    const double s1 = tri_signed_area(a, b, verts_[opposite(e.face1)].xy());
    if (s0 * s1 >= 0.0)
      throw TerrainError(TerrainError::Kind::FoldedFace,
                         "projection folds over at edge (" + std::to_string(e.a) +
                             "," + std::to_string(e.b) + ")");
  }
}

void Terrain::build_boundary() {
  std::map<std::size_t, std::vector<std::size_t>> next;  // boundary adjacency
  std::size_t boundary_edges = 0;
  for (const auto& e : edges_) {
    if (!e.boundary()) continue;
    ++boundary_edges;
    next[e.a].push_back(e.b);
    next[e.b].push_back(e.a);
  }
  if (boundary_edges == 0)
    throw TerrainError(TerrainError::Kind::BoundaryCycles,
                       "mesh has no boundary (closed surface)");
  for (const auto& [v, nb] : next)
    if (nb.size() != 2)
      throw TerrainError(TerrainError::Kind::BoundaryCycles,
                         "boundary is not a simple cycle at vertex " +
                             std::to_string(v));

  // walk the unique cycle from the smallest boundary vertex
  const std::size_t start = next.begin()->first;
  boundary_.push_back(start);
  std::size_t prev = start, cur = next[start][0];
  while (cur != start) {
    boundary_.push_back(cur);
    const auto& nb = next[cur];
    const std::size_t nxt = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cur;
    cur = nxt;
  }
  if (boundary_.size() != next.size())
    throw TerrainError(TerrainError::Kind::BoundaryCycles,
                       "mesh has more than one boundary cycle");

  // orient counterclockwise in projection
  std::vector<Vec2> poly;
  poly.reserve(boundary_.size());
  for (std::size_t v : boundary_) poly.push_back(verts_[v].xy());
  if (polygon_signed_area(poly) < 0.0)
    std::reverse(boundary_.begin() + 1, boundary_.end());

  // convexity advisory only; the constructions need just the disk topology
  bool convex = true;
  const std::size_t m = boundary_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 a = verts_[boundary_[i]].xy();
    const Vec2 b = verts_[boundary_[(i + 1) % m]].xy();
    const Vec2 c = verts_[boundary_[(i + 2) % m]].xy();
    if ((b - a).cross(c - b) < -1e-12) {
      convex = false;
      break;
    }
  }
  if (!convex) warnings_.push_back("projected boundary is not convex");
}

std::size_t Terrain::boundary_edge_count() const {
  std::size_t c = 0;
  for (const auto& e : edges_)
    if (e.boundary()) ++c;
  return c;
}

std::size_t Terrain::edge_between(std::size_t a, std::size_t b) const {
  const auto key = std::minmax(a, b);
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].a == key.first && edges_[i].b == key.second) return i;
  return EdgeInfo::kNone;
}

Vec3 Terrain::position(const SurfacePoint& sp) const {
  const auto& t = tris_[sp.face];
  return verts_[t[0]] * sp.bary[0] + verts_[t[1]] * sp.bary[1] +
         verts_[t[2]] * sp.bary[2];
}

Vec2 Terrain::projected(const SurfacePoint& sp) const { return position(sp).xy(); }

SurfacePoint Terrain::locate(double x, double y) const {
  const Vec2 p{x, y};
  constexpr double tol = 1e-12;
  for (std::size_t f = 0; f < tris_.size(); ++f) {
    const auto& t = tris_[f];
    const Vec2 a = verts_[t[0]].xy(), b = verts_[t[1]].xy(), c = verts_[t[2]].xy();
    const double area = tri_signed_area(a, b, c);
    double l0 = tri_signed_area(p, b, c) / area;
    double l1 = tri_signed_area(a, p, c) / area;
    double l2 = tri_signed_area(a, b, p) / area;
    if (l0 < -tol || l1 < -tol || l2 < -tol) continue;
    l0 = std::max(l0, 0.0);
    l1 = std::max(l1, 0.0);
    l2 = std::max(l2, 0.0);
    const double sum = l0 + l1 + l2;
    return SurfacePoint{f, {l0 / sum, l1 / sum, l2 / sum}};
  }
  throw std::invalid_argument("locate: point (" + std::to_string(x) + "," +
                              std::to_string(y) + ") outside the terrain domain");
}

// ---- file formats ----------------------------------------------------------

namespace {

// whitespace/comment-aware token stream for ASCII OFF
std::vector<std::string> off_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

}  // namespace

Terrain terrain_from_off(const std::string& text) {
  const auto tokens = off_tokens(text);
  std::size_t pos = 0;
  auto need = [&](const char* what) -> const std::string& {
    if (pos >= tokens.size())
      throw TerrainError(TerrainError::Kind::BadFile,
                         std::string("OFF: unexpected end of file, expected ") +
                             what);
    return tokens[pos++];
  };
  if (need("OFF header") != "OFF")
    throw TerrainError(TerrainError::Kind::BadFile, "OFF: missing header");
  const std::size_t nv = std::stoul(need("vertex count"));
  const std::size_t nf = std::stoul(need("face count"));
  need("edge count");  // present but unused
  std::vector<Vec3> verts(nv);
  for (auto& v : verts) {
    v.x = std::stod(need("x"));
    v.y = std::stod(need("y"));
    v.z = std::stod(need("z"));
  }
  std::vector<std::array<std::size_t, 3>> tris(nf);
  for (auto& t : tris) {
    if (std::stoul(need("face size")) != 3)
      throw TerrainError(TerrainError::Kind::BadFile,
                         "OFF: only triangle faces are supported");
    t[0] = std::stoul(need("face index"));
    t[1] = std::stoul(need("face index"));
    t[2] = std::stoul(need("face index"));
  }
  return Terrain(std::move(verts), std::move(tris));
}

Terrain terrain_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<Vec3> verts;
  for (const auto& jv : j.at("vertices")) {
    if (!jv.is_array() || jv.size() != 3)
      throw TerrainError(TerrainError::Kind::BadFile,
                         "mesh JSON vertex must be [x, y, z]");
    verts.push_back({jv[0].get<double>(), jv[1].get<double>(), jv[2].get<double>()});
  }
  std::vector<std::array<std::size_t, 3>> tris;
  for (const auto& jt : j.at("triangles")) {
    if (!jt.is_array() || jt.size() != 3)
      throw TerrainError(TerrainError::Kind::BadFile,
                         "mesh JSON triangle must be [a, b, c]");
    tris.push_back({jt[0].get<std::size_t>(), jt[1].get<std::size_t>(),
                    jt[2].get<std::size_t>()});
  }
  return Terrain(std::move(verts), std::move(tris));
}

Terrain load_terrain(const std::string& path, TerrainFormat format) {
  std::ifstream in(path);
  if (!in) throw TerrainError(TerrainError::Kind::BadFile,
                              "cannot open terrain file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return format == TerrainFormat::OFF ? terrain_from_off(ss.str())
                                      : terrain_from_json(ss.str());
}

Terrain load_terrain(const std::string& path) {
  const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  return load_terrain(path, json ? TerrainFormat::JSON : TerrainFormat::OFF);
}

std::string terrain_to_off(const Terrain& t) {
  std::string out = "OFF\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu %zu %zu\n", t.vertices().size(),
                t.triangles().size(), t.edges().size());
  out += buf;
  for (const auto& v : t.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x, v.y, v.z);
    out += buf;
  }
  for (const auto& f : t.triangles()) {
    std::snprintf(buf, sizeof buf, "3 %zu %zu %zu\n", f[0], f[1], f[2]);
    out += buf;
  }
  return out;
}

void save_terrain_off(const Terrain& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw TerrainError(TerrainError::Kind::BadFile,
                               "cannot write terrain file: " + path);
  out << terrain_to_off(t);
}

TerrainKind terrain_kind_from_string(const std::string& s) {
  if (s == "flat") return TerrainKind::Flat;
  if (s == "ridge") return TerrainKind::Ridge;
  if (s == "random-heights") return TerrainKind::RandomHeights;
  throw std::invalid_argument("unknown terrain kind: " + s);
}

Terrain gen_terrain(TerrainKind kind, std::size_t resolution, std::uint64_t seed) {
  if (resolution < 1)
    throw std::invalid_argument("gen_terrain: resolution must be >= 1");
  const std::size_t k = resolution;
  Rng rng(seed);
  std::vector<Vec3> verts;
  verts.reserve((k + 1) * (k + 1));
  for (std::size_t j = 0; j <= k; ++j) {
    for (std::size_t i = 0; i <= k; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(k);
      const double y = static_cast<double>(j) / static_cast<double>(k);
      double z = 0.0;
      switch (kind) {
        case TerrainKind::Flat:
          break;
        case TerrainKind::Ridge:
          // crease of height 0.4 along the diagonal y = x
          z = 0.4 * std::max(0.0, 1.0 - std::fabs(x - y) / 0.5);
          break;
        case TerrainKind::RandomHeights:
          z = rng.uniform(0.0, 0.3);
          break;
      }
      verts.push_back({x, y, z});
    }
  }
  auto vid = [&](std::size_t i, std::size_t j) { return j * (k + 1) + i; };
  std::vector<std::array<std::size_t, 3>> tris;
  tris.reserve(2 * k * k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      // cell split along the (i,j)-(i+1,j+1) diagonal, so the main grid
      // diagonal is a mesh edge chain (keeps the ridge crease sharp)
      tris.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      tris.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  return Terrain(std::move(verts), std::move(tris));
}

std::vector<Vec2> xy_points_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<Vec2> pts;
  for (const auto& jp : j.at("points"))
    pts.push_back({jp.at("x").get<double>(), jp.at("y").get<double>()});
  return pts;
}

std::string xy_points_to_json(const std::vector<Vec2>& pts) {
  nlohmann::json j;
  j["points"] = nlohmann::json::array();
  for (const auto& p : pts) j["points"].push_back({{"x", p.x}, {"y", p.y}});
  return j.dump(2) + "\n";
}

std::vector<Vec2> load_xy_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open points file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return xy_points_from_json(ss.str());
}

void save_xy_points(const std::vector<Vec2>& pts, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write points file: " + path);
  out << xy_points_to_json(pts);
}

std::vector<Vec2> gen_surface_points(const Terrain& t, std::size_t n,
                                     std::uint64_t seed) {
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& v : t.vertices()) {
    xlo = std::min(xlo, v.x);
    xhi = std::max(xhi, v.x);
    ylo = std::min(ylo, v.y);
    yhi = std::max(yhi, v.y);
  }
  Rng rng(seed);
  std::vector<Vec2> pts;
  std::size_t attempts = 0;
  while (pts.size() < n) {
    if (++attempts > 1000 * (n + 10))
      throw std::runtime_error("gen_surface_points: rejection sampling stalled");
    const Vec2 p{rng.uniform(xlo, xhi), rng.uniform(ylo, yhi)};
    try {
      t.locate(p.x, p.y);
    } catch (const std::invalid_argument&) {
      continue;
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace geospan
