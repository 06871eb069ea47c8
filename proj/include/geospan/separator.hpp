#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geospan/steiner.hpp"
#include "geospan/terrain.hpp"

namespace geospan {

/// Input points located on the terrain and embedded as Steiner-graph nodes.
struct LocatedPoints {
  std::vector<SurfacePoint> surface;
  std::vector<std::size_t> nodes;  // sg node per point
  std::vector<Vec2> xy;

  std::size_t size() const { return nodes.size(); }
};

struct TerrainInstance {
  SteinerGraph sg;
  LocatedPoints points;
};

/// Builds the Steiner graph with the input points embedded as nodes. Also
/// guarantees at least one boundary node free of input points (adding one
/// extra boundary Steiner point when every boundary node is occupied), so a
/// sweep origin always exists.
TerrainInstance prepare_instance(const Terrain& t, std::size_t ms,
                                 const std::vector<Vec2>& pts);

/// Balanced sp-separator: a boundary-to-boundary shortest path, or an
/// sp-triangle whose sides are shortest paths pairwise disjoint except at
/// shared corners (one side when degenerate). `inside` holds the point
/// indices of the closed inside region, with 2n/9 <= |inside| <= 2n/3.
struct Separator {
  enum class Kind { Path, Triangle };
  Kind kind = Kind::Path;
  std::vector<GeodesicPath> sides;  // 1 for Path/degenerate, 3 otherwise
  std::vector<std::size_t> inside;
  bool used_fallback = false;

  std::string to_json() const;
};

/// Integer balance window bounds: smallest and largest admissible |inside|.
std::size_t balance_lo(std::size_t n);  // ceil(2n/9)
std::size_t balance_hi(std::size_t n);  // floor(2n/3)

struct JumpRecord {
  std::size_t v_before = kNoNode;  // kNoNode marks the virtual sweep start
  std::size_t v_after = kNoNode;
  GeodesicPath sigma;        // tree path u -> v_before (trivial at the start)
  GeodesicPath sigma_prime;  // tree path u -> v_after
};

struct SweepResult {
  std::optional<Separator> balanced;
  std::optional<JumpRecord> jump;
  std::vector<std::size_t> counts;  // inside count per sweep position
  std::size_t nonmonotone_steps = 0;
};

/// Discrete boundary sweep: v runs counterclockwise over boundary nodes
/// starting after u; returns the first balanced path separator or the first
/// jump over more than 4n/9 points. u must not coincide with any point of
/// the subset.
SweepResult sweep_path_separator(const SteinerGraph& sg, const Terrain& t,
                                 const LocatedPoints& pts,
                                 const std::vector<std::size_t>& subset,
                                 std::size_t u);

/// Shrinks an sp-triangle with >= 2n/9 points until the balance window is
/// hit, via the degenerate-subpath, heavy-side and interior-split rules.
/// Throws std::runtime_error when the iteration cap is exceeded.
Separator refine_triangle(const SteinerGraph& sg, const Terrain& t,
                          const LocatedPoints& pts,
                          const std::vector<std::size_t>& subset,
                          const std::vector<GeodesicPath>& triangle_sides);

/// Sweep, then jump decomposition and triangle refinement; exhaustive
/// fallback as a last resort (logged via used_fallback). Requires n >= 5.
Separator find_balanced_separator(const SteinerGraph& sg, const Terrain& t,
                                  const LocatedPoints& pts,
                                  const std::vector<std::size_t>& subset);

/// Membership tests shared by the separator machinery and its tests.
bool point_on_path(const LocatedPoints& pts, std::size_t point,
                   const GeodesicPath& path, double tol = 1e-9);
std::vector<std::size_t> points_inside_separator(
    const SteinerGraph& sg, const Terrain& t, const LocatedPoints& pts,
    const std::vector<std::size_t>& subset, const Separator& sep);

/// Re-verifies a returned separator: integer balance, sides are
/// Steiner-graph shortest paths, triangle sides pairwise disjoint except at
/// shared corners, inside list matches a recount. Throws on violation.
void check_separator(const SteinerGraph& sg, const Terrain& t,
                     const LocatedPoints& pts,
                     const std::vector<std::size_t>& subset,
                     const Separator& sep);

}  // namespace geospan
