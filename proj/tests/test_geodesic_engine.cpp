#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "geospan/common.hpp"
#include "geospan/steiner.hpp"
#include "geospan/terrain.hpp"

using namespace geospan;

namespace {

// Two unit squares meeting at a 90-degree ridge along x = 0. Unfolding the
// squares into a plane makes the corner-to-corner geodesic a straight
// 2 x 1 diagonal of length sqrt(5); with an odd Steiner count the crossing
// node at y = 1/2 exists and the graph realizes sqrt(5) exactly.
Terrain tent_terrain() {
  const double c = std::sqrt(2.0) / 2.0;
  std::vector<Vec3> v = {
      {-c, 0, 0}, {-c, 1, 0},  // left rim      (0,1)
      {0, 0, c},  {0, 1, c},   // ridge         (2,3)
      {c, 0, 0},  {c, 1, 0},   // right rim     (4,5)
  };
  std::vector<std::array<std::size_t, 3>> f = {
      {0, 2, 3}, {0, 3, 1}, {2, 4, 5}, {2, 5, 3}};
  return Terrain(std::move(v), std::move(f));
}

std::size_t node_at(const SteinerGraph& sg, double x, double y) {
  for (std::size_t i = 0; i < sg.node_count(); ++i)
    if (distance(sg.xy(i), Vec2{x, y}) < 1e-9) return i;
  REQUIRE(false);
  return kNoNode;
}

}  // namespace

TEST_CASE("steiner graph node and arc counts") {
  const Terrain square = terrain_from_off(
      "OFF\n4 2 5\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n3 0 1 2\n3 0 2 3\n");
  const auto b0 = build_steiner_graph(square, 0);
  CHECK(b0.graph.node_count() == 4);
  CHECK(b0.graph.arc_count() == 5);  // per-face cliques, diagonal counted once
  b0.graph.validate();

  const Terrain tri =
      terrain_from_off("OFF\n3 1 3\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n");
  const auto b1 = build_steiner_graph(tri, 1);
  CHECK(b1.graph.node_count() == 6);
  CHECK(b1.graph.arc_count() == 15);
  b1.graph.validate();

  // V + ms*E on a bigger terrain
  const Terrain t = gen_terrain(TerrainKind::RandomHeights, 4, 3);
  for (std::size_t ms : {0u, 2u}) {
    const auto b = build_steiner_graph(t, ms);
    CHECK(b.graph.node_count() == t.vertices().size() + ms * t.edges().size());
    b.graph.validate();
    CHECK(b.graph.boundary_loop().size() ==
          t.boundary().size() + ms * t.boundary_edge_count());
  }
}

TEST_CASE("refining the Steiner grid never increases distances") {
  // node sets nest when m+1 divides m'+1: 0 -> 1 -> 3
  const Terrain t = gen_terrain(TerrainKind::Ridge, 3, 0);
  const auto g0 = build_steiner_graph(t, 0).graph;
  const auto g1 = build_steiner_graph(t, 1).graph;
  const auto g3 = build_steiner_graph(t, 3).graph;
  const std::size_t nv = t.vertices().size();
  for (std::size_t a = 0; a < nv; ++a) {
    const auto d0 = all_distances(g0, a);
    const auto d1 = all_distances(g1, a);
    const auto d3 = all_distances(g3, a);
    for (std::size_t b = 0; b < nv; ++b) {
      CHECK(leq_tol(d1[b], d0[b]));
      CHECK(leq_tol(d3[b], d1[b]));
    }
  }
}

TEST_CASE("flat terrain: same-face distances are exact chords") {
  const Terrain t = gen_terrain(TerrainKind::Flat, 2, 0);
  const auto sg = build_steiner_graph(t, 2).graph;
  const auto& fn = sg.face_nodes()[0];
  for (std::size_t i = 0; i < fn.size(); ++i)
    for (std::size_t j = i + 1; j < fn.size(); ++j) {
      const auto [d, path] = geodesic_distance(sg, fn[i], fn[j]);
      // collinear Steiner nodes admit equal-length multi-hop ties, so the
      // match is up to accumulated rounding only
      CHECK(nearly_equal(d, distance(sg.node(fn[i]).pos, sg.node(fn[j]).pos), 1e-12));
      validate_path(sg, path);
    }
}

TEST_CASE("tent unfolding oracle") {
  const Terrain tent = tent_terrain();
  const double c = std::sqrt(2.0) / 2.0;
  const double exact = std::sqrt(5.0);

  // odd Steiner count: ridge node at y = 1/2, the unfolded crossing point
  {
    const auto sg = build_steiner_graph(tent, 1).graph;
    const auto [d, path] =
        geodesic_distance(sg, node_at(sg, -c, 0.0), node_at(sg, c, 1.0));
    CHECK(d == doctest::Approx(exact).epsilon(1e-12));
    validate_path(sg, path);
  }

  // measured discretization gap shrinks with refinement and is small by ms=4
  double prev_gap = 1e9;
  for (std::size_t ms : {2u, 4u}) {
    const auto sg = build_steiner_graph(tent, ms).graph;
    const auto [d, path] =
        geodesic_distance(sg, node_at(sg, -c, 0.0), node_at(sg, c, 1.0));
    const double gap = d / exact - 1.0;
    CHECK(gap >= -1e-12);  // chords never undercut the true geodesic
    CHECK(gap < prev_gap + 1e-12);
    prev_gap = gap;
    MESSAGE("tent eps_g at ms=", ms, ": ", gap);
    if (ms == 4) CHECK(gap <= 0.05);
  }
}

TEST_CASE("geodesic distance is symmetric and zero on the diagonal") {
  const Terrain t = gen_terrain(TerrainKind::RandomHeights, 3, 12);
  const auto sg = build_steiner_graph(t, 1).graph;
  const auto [dzero, pzero] = geodesic_distance(sg, 5, 5);
  CHECK(dzero == 0.0);
  CHECK(pzero.size() == 1);
  Rng rng(5);
  for (int k = 0; k < 30; ++k) {
    const std::size_t a = rng.below(sg.node_count());
    const std::size_t b = rng.below(sg.node_count());
    const auto [dab, pab] = geodesic_distance(sg, a, b);
    const auto [dba, pba] = geodesic_distance(sg, b, a);
    CHECK(dab == dba);  // exact, by canonicalization
    if (a != b) {
      CHECK(pab.nodes.front() == a);
      CHECK(pab.nodes.back() == b);
      CHECK(pba.nodes.front() == b);
      validate_path(sg, pab);
    }
  }
}

TEST_CASE("closest_on_path: on-path point, perpendicular foot, interval") {
  const Terrain t = gen_terrain(TerrainKind::Flat, 4, 0);
  const auto sg = build_steiner_graph(t, 1).graph;
  const std::size_t bottom = node_at(sg, 0.5, 0.0);
  const std::size_t top = node_at(sg, 0.5, 1.0);
  const auto [len, sigma] = geodesic_distance(sg, bottom, top);
  CHECK(len == doctest::Approx(1.0).epsilon(1e-12));

  // a node of sigma is its own projection
  const auto self = closest_on_path(sg, sigma.nodes[1], sigma);
  CHECK(self.node == sigma.nodes[1]);
  CHECK(self.dist == 0.0);

  // off-path point: nearest sigma node approximates the perpendicular foot
  const std::size_t p = node_at(sg, 0.75, 0.5);
  const auto foot = closest_on_path(sg, p, sigma);
  CHECK(distance(sg.xy(foot.node), Vec2{0.5, 0.5}) < 1e-9);
  CHECK(std::fabs(foot.dist - 0.25) <= 0.25 / 4.0 + 1e-9);  // grid-resolution slack

  // interval excluding the global minimum: the nearer interval end wins
  const auto restricted =
      closest_on_path(sg, p, sigma, std::make_pair(0.75, sigma.length()));
  CHECK(restricted.arc_pos == doctest::Approx(0.75));
  CHECK(distance(sg.xy(restricted.node), Vec2{0.5, 0.75}) < 1e-9);

  CHECK_THROWS_AS(
      closest_on_path(sg, p, sigma, std::make_pair(0.3001, 0.3002)),
      std::invalid_argument);
}

TEST_CASE("classify_side on the unit square") {
  const Terrain t = gen_terrain(TerrainKind::Flat, 2, 0);
  const auto sg = build_steiner_graph(t, 0).graph;
  const auto [len, sigma] =
      geodesic_distance(sg, node_at(sg, 0.5, 0.0), node_at(sg, 0.5, 1.0));
  CHECK(len == doctest::Approx(1.0));
  CHECK(classify_side(t, sigma, {0.75, 0.2}) == Side::Right);
  CHECK(classify_side(t, sigma, {0.2, 0.9}) == Side::Left);
  CHECK(classify_side(t, sigma, {0.5, 0.5}) == Side::On);
  // boundary points of the two halves
  CHECK(classify_side(t, sigma, {1.0, 0.5}) == Side::Right);
  CHECK(classify_side(t, sigma, {0.0, 0.5}) == Side::Left);
  // reversed path swaps sides
  const auto rev = sigma.reversed();
  CHECK(classify_side(t, rev, {0.75, 0.2}) == Side::Left);
  CHECK(classify_side(t, rev, {0.2, 0.9}) == Side::Right);
}

TEST_CASE("projection sets: window, pieces, rep weights") {
  const Terrain t = gen_terrain(TerrainKind::Flat, 4, 0);
  const auto sg = build_steiner_graph(t, 3).graph;
  const std::size_t a = node_at(sg, 0.0, 0.0);
  const std::size_t b = node_at(sg, 1.0, 0.0);
  const auto [len, sigma] = geodesic_distance(sg, a, b);  // bottom edge
  CHECK(len == doctest::Approx(1.0));

  // p on sigma: the set is {p_sigma} alone with weight 0
  const auto trivial = build_projection_set(sg, sigma.nodes[2], sigma, 0.5);
  CHECK(trivial.base_weight == 0.0);
  REQUIRE(trivial.reps.size() == 1);
  CHECK(trivial.reps[0].weight == 0.0);

  // p at geodesic distance 1 from sigma, eps2 = 0.5: window radius 5,
  // pieces of length at most 0.5, at most ceil(2*5/0.5)+1 = 21 reps
  const double eps2 = 0.5;
  const std::size_t p = node_at(sg, 0.5, 1.0);
  const auto ps = build_projection_set(sg, p, sigma, eps2);
  CHECK(ps.base_weight == doctest::Approx(1.0).epsilon(0.02));
  CHECK(ps.reps.size() <= 21);
  const double radius = (1.0 + 2.0 / eps2) * ps.base_weight;
  for (const auto& rep : ps.reps) {
    CHECK(std::fabs(rep.arc_pos - ps.base_pos) <= radius + 1e-9);
    CHECK(rep.piece_hi - rep.piece_lo <= eps2 * ps.base_weight + 1e-9);
    CHECK(rep.arc_pos >= rep.piece_lo - 1e-9);
    CHECK(rep.arc_pos <= rep.piece_hi + 1e-9);
    // flat closed form: straight-line distance, with grid slack above
    const double straight = std::hypot(rep.arc_pos - 0.5, 1.0);
    CHECK(rep.weight >= straight - 1e-12);
    CHECK(rep.weight <= straight * 1.02);
  }
}

TEST_CASE("case A/B inequality and the d_sigma_w lower bound") {
  const double eps2 = 0.25;
  const Terrain t = gen_terrain(TerrainKind::Flat, 4, 0);
  const auto built = build_steiner_graph(t, 2);
  const auto& sg = built.graph;
  const auto [len, sigma] =
      geodesic_distance(sg, node_at(sg, 0.0, 0.5), node_at(sg, 1.0, 0.5));

  Rng rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t p = rng.below(sg.node_count());
    const auto dist = all_distances(sg, p);
    const auto ps = build_projection_set(sg, dist, p, sigma, eps2);
    const std::size_t ri = rng.below(sigma.size());
    const double rpos = sigma.prefix[ri];
    const std::size_t r = sigma.nodes[ri];

    double ppos, pdist;
    if (!ps.in_window(rpos)) {
      ppos = ps.base_pos;
      pdist = ps.base_weight;
    } else {
      const auto rep = ps.rep_for(rpos);
      REQUIRE(rep.has_value());
      ppos = rep->arc_pos;
      pdist = rep->weight;
    }
    const double d_sigma = std::fabs(ppos - rpos);
    CHECK(leq_tol(pdist + d_sigma, (1.0 + eps2) * dist[r]));
  }

  // d_sigma_w between closest projections never undercuts d_T
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t x = rng.below(sg.node_count());
    const std::size_t y = rng.below(sg.node_count());
    const auto dx = all_distances(sg, x);
    const auto dy = all_distances(sg, y);
    const auto cx = closest_on_path(sg, x, sigma);
    const auto cy = closest_on_path(sg, y, sigma);
    const double lower = cx.dist + std::fabs(cx.arc_pos - cy.arc_pos) + cy.dist;
    CHECK(leq_tol(dx[y], lower));
    (void)dy;
  }
}

TEST_CASE("embedding extra surface points") {
  const Terrain t = gen_terrain(TerrainKind::Flat, 2, 0);
  std::vector<SurfacePoint> extras = {
      t.locate(0.3, 0.2),   // face interior
      t.locate(0.5, 0.25),  // on an interior grid edge
      t.locate(0.5, 0.0),   // boundary edge midpoint (existing mesh vertex)
      t.locate(0.3, 0.2),   // duplicate of the first
  };
  const auto built = build_steiner_graph(t, 0, extras);
  REQUIRE(built.embedded.size() == 4);
  CHECK(built.embedded[0] == built.embedded[3]);  // coincident points share a node
  CHECK(built.embedded[2] < t.vertices().size());  // reused the mesh vertex
  built.graph.validate();
  // embedded boundary points appear in the boundary loop
  const auto& loop = built.graph.boundary_loop();
  CHECK(std::find(loop.begin(), loop.end(), built.embedded[2]) != loop.end());

  const auto json = geodesic_distance(built.graph, built.embedded[0],
                                      built.embedded[1])
                        .second.to_json();
  CHECK(json.find("\"nodes\"") != std::string::npos);
  CHECK(json.find("\"length\"") != std::string::npos);
}
