#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "geospan/geometry.hpp"

namespace geospan {

struct TerrainError : std::runtime_error {
  enum class Kind {
    BadFile,
    DegenerateFace,
    NonManifoldEdge,
    BoundaryCycles,   // zero or more than one boundary cycle
    NonInjectiveProjection,
    FoldedFace,       // adjacent faces overlap in projection
    NotADisk,         // Euler characteristic violated
  };
  Kind kind;
  TerrainError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

/// A point on the terrain surface: containing face plus barycentric
/// coordinates (non-negative, summing to 1).
struct SurfacePoint {
  std::size_t face = 0;
  std::array<double, 3> bary{1.0, 0.0, 0.0};
};

/// Triangulated height field over a polygonal domain: the xy-projection is
/// an embedded planar triangulation forming a topological disk.
class Terrain {
 public:
  struct EdgeInfo {
    std::size_t a, b;                  // vertex indices, a < b
    std::size_t face0, face1;          // face1 == kNone on the boundary
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    bool boundary() const { return face1 == kNone; }
  };

  /// Validates all structural invariants; throws TerrainError.
  Terrain(std::vector<Vec3> vertices, std::vector<std::array<std::size_t, 3>> tris);

  const std::vector<Vec3>& vertices() const { return verts_; }
  const std::vector<std::array<std::size_t, 3>>& triangles() const { return tris_; }
  const std::vector<EdgeInfo>& edges() const { return edges_; }
  /// Boundary vertex cycle, counterclockwise in projection.
  const std::vector<std::size_t>& boundary() const { return boundary_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::size_t boundary_edge_count() const;
  /// Edge index for an (unordered) vertex pair, or EdgeInfo::kNone.
  std::size_t edge_between(std::size_t a, std::size_t b) const;

  Vec3 position(const SurfacePoint& sp) const;
  Vec2 projected(const SurfacePoint& sp) const;

  /// Face containing (x,y) with barycentric coordinates; shared edges and
  /// vertices resolve to the lowest incident face index. Throws
  /// std::invalid_argument when (x,y) is outside the projected domain.
  SurfacePoint locate(double x, double y) const;

 private:
  void build_edges();
  void check_projection();
  void build_boundary();

  std::vector<Vec3> verts_;
  std::vector<std::array<std::size_t, 3>> tris_;
  std::vector<EdgeInfo> edges_;
  std::vector<std::size_t> boundary_;
  std::vector<std::string> warnings_;
};

enum class TerrainFormat { OFF, JSON };

Terrain load_terrain(const std::string& path);  // format from file extension
Terrain load_terrain(const std::string& path, TerrainFormat format);
Terrain terrain_from_off(const std::string& text);
Terrain terrain_from_json(const std::string& text);
std::string terrain_to_off(const Terrain& t);
void save_terrain_off(const Terrain& t, const std::string& path);

enum class TerrainKind { Flat, Ridge, RandomHeights };
TerrainKind terrain_kind_from_string(const std::string& s);

/// Grid terrain over the unit square with resolution^2 cells. Flat terrains
/// have z = 0 everywhere, so geodesic distances equal planar distances.
Terrain gen_terrain(TerrainKind kind, std::size_t resolution, std::uint64_t seed);

/// Planar point-set JSON for terrains: {"points": [{"x": ..., "y": ...}]}.
std::vector<Vec2> xy_points_from_json(const std::string& text);
std::string xy_points_to_json(const std::vector<Vec2>& pts);
std::vector<Vec2> load_xy_points(const std::string& path);
void save_xy_points(const std::vector<Vec2>& pts, const std::string& path);

/// Deterministic points inside the projected domain (rejection sampling).
std::vector<Vec2> gen_surface_points(const Terrain& t, std::size_t n,
                                     std::uint64_t seed);

}  // namespace geospan
