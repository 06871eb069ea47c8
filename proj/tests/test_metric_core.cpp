#include <cmath>
#include <set>

#include "doctest.h"
#include "geospan/spanner_graph.hpp"
#include "geospan/weighted_points.hpp"
#include "oracles.hpp"

using namespace geospan;

namespace {

PointSet square_with_center() {
  PointSet s;
  s.dim = 2;
  s.points = {{{0, 0}, 0}, {{1, 0}, 0}, {{1, 1}, 0}, {{0, 1}, 0}, {{0.5, 0.5}, 0}};
  return s;
}

Metric dw_metric(const PointSet& s) {
  return [&s](std::size_t i, std::size_t j) { return dw(s, i, j); };
}

}  // namespace

TEST_CASE("dw distance basics") {
  PointSet s;
  s.dim = 2;
  s.points = {{{0, 0}, 1}, {{3, 0}, 2}};
  CHECK(dw(s, 0, 0) == 0.0);  // identical entry
  CHECK(dw(s, 0, 1) == doctest::Approx(6.0).epsilon(1e-12));

  WeightedPoint bad{{0, 0, 0}, 1};
  CHECK_THROWS_AS(dw_distance(s.points[0], bad), std::invalid_argument);
}

TEST_CASE("dw symmetry and triangle inequality on random points") {
  const PointSet s = gen_weighted_points(40, 3, 1.0, 2.0, 99);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      CHECK(dw(s, i, j) == dw(s, j, i));
  Rng rng(7);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t a = rng.below(s.size());
    const std::size_t b = rng.below(s.size());
    const std::size_t c = rng.below(s.size());
    CHECK(leq_tol(dw(s, a, b), dw(s, a, c) + dw(s, c, b)));
  }
}

TEST_CASE("graph_distance on tiny graphs") {
  SpannerGraph single;
  single.n = 2;
  single.add_edge(0, 1, 5.0);
  CHECK(*graph_distance(single, 0, 1) == 5.0);
  CHECK(*graph_distance(single, 1, 1) == 0.0);

  SpannerGraph isolated;
  isolated.n = 2;
  CHECK_FALSE(graph_distance(isolated, 0, 1).has_value());

  SpannerGraph triangle;
  triangle.n = 3;
  triangle.add_edge(0, 1, 1.0);
  triangle.add_edge(1, 2, 1.0);
  triangle.add_edge(0, 2, 3.0);
  CHECK(*graph_distance(triangle, 0, 2) == 2.0);
}

TEST_CASE("graph_distance agrees exactly with Bellman-Ford on random graphs") {
  Rng rng(2024);
  for (int inst = 0; inst < 12; ++inst) {
    const std::size_t n = 5 + rng.below(46);
    SpannerGraph g;
    g.n = n;
    std::set<std::pair<std::size_t, std::size_t>> used;
    const std::size_t m = rng.below(2 * n + 1);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t u = rng.below(n), v = rng.below(n);
      if (u == v) continue;
      const auto key = std::minmax(u, v);
      if (!used.insert(key).second) continue;
      g.add_edge(key.first, key.second, rng.uniform(0.1, 5.0));
    }
    Adjacency adj(g);
    for (std::size_t src = 0; src < n; ++src) {
      const auto mine = sssp(adj, src);
      const auto ref = oracles::bellman_ford(g, src);
      for (std::size_t v = 0; v < n; ++v) {
        REQUIRE(mine[v].has_value() == ref[v].has_value());
        if (mine[v]) CHECK(nearly_equal(*mine[v], *ref[v], 1e-12));
      }
    }
  }
}

TEST_CASE("spanning ratio: complete graph and collinear path are 1") {
  const PointSet s = gen_weighted_points(12, 2, 1.0, 1.0, 5);
  SpannerGraph complete;
  complete.n = s.size();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      complete.add_edge(i, j, dw(s, i, j));
  const auto r = spanning_ratio(complete, dw_metric(s));
  CHECK(r.connected);
  CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-12));

  PointSet line;
  line.dim = 1;
  line.points = {{{0}, 0}, {{1}, 0}, {{2}, 0}};
  SpannerGraph path;
  path.n = 3;
  path.add_edge(0, 1, 1.0);
  path.add_edge(1, 2, 1.0);
  const auto r2 = spanning_ratio(path, dw_metric(line));
  CHECK(r2.ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spanning ratio of the unit-square star is sqrt(2)") {
  // all 6 pairs enumerated directly as the oracle
  const PointSet s = square_with_center();
  SpannerGraph star;
  star.n = 5;
  for (std::size_t c = 0; c < 4; ++c) star.add_edge(c, 4, dw(s, c, 4));

  double expect = 0.0;
  const auto d = oracles::floyd_warshall(star);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      expect = std::max(expect, *d[i][j] / dw(s, i, j));
  CHECK(expect == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const auto r = spanning_ratio(star, dw_metric(s));
  CHECK(r.connected);
  CHECK(r.ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // worst pair must be an adjacent corner pair
  const double got = *graph_distance(star, r.worst_u, r.worst_v) /
                     dw(s, r.worst_u, r.worst_v);
  CHECK(got == doctest::Approx(r.ratio));
}

TEST_CASE("parallel ratio kernel equals the serial reference exactly") {
  Rng rng(31);
  for (int inst = 0; inst < 6; ++inst) {
    const PointSet s = gen_weighted_points(30 + rng.below(30), 2, 1.0, 1.0, 100 + inst);
    SpannerGraph g;
    g.n = s.size();
    // random connected-ish graph: path plus chords
    for (std::size_t i = 0; i + 1 < s.size(); ++i) g.add_edge(i, i + 1, dw(s, i, i + 1));
    for (int k = 0; k < 40; ++k) {
      const std::size_t u = rng.below(s.size()), v = rng.below(s.size());
      if (u == v || (u + 1 == v) || (v + 1 == u)) continue;
      const auto key = std::minmax(u, v);
      bool dup = false;
      for (const auto& e : g.edges)
        if (e.u == key.first && e.v == key.second) dup = true;
      if (!dup) g.add_edge(key.first, key.second, dw(s, u, v));
    }
    const auto a = spanning_ratio_serial(g, dw_metric(s));
    const auto b = spanning_ratio(g, dw_metric(s));
    CHECK(a.connected == b.connected);
    CHECK(a.ratio == b.ratio);  // bitwise identical
    CHECK(a.worst_u == b.worst_u);
    CHECK(a.worst_v == b.worst_v);

    const auto ma = all_pairs_serial(g);
    const auto mb = all_pairs(g);
    REQUIRE(ma.size() == mb.size());
    for (std::size_t i = 0; i < ma.size(); ++i)
      for (std::size_t j = 0; j < ma[i].size(); ++j) {
        REQUIRE(ma[i][j].has_value() == mb[i][j].has_value());
        if (ma[i][j]) CHECK(*ma[i][j] == *mb[i][j]);
      }
  }
}

TEST_CASE("verify_spanner pass, fail and unreachable reporting") {
  const PointSet s = square_with_center();
  SpannerGraph complete;
  complete.n = 5;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) complete.add_edge(i, j, dw(s, i, j));
  CHECK(verify_spanner(complete, dw_metric(s), 1.0).pass);

  SpannerGraph star;
  star.n = 5;
  for (std::size_t c = 0; c < 4; ++c) star.add_edge(c, 4, dw(s, c, 4));
  const auto fail = verify_spanner(star, dw_metric(s), 1.2);
  CHECK_FALSE(fail.pass);
  CHECK(fail.connected);
  // the witness pair really violates t
  CHECK(*graph_distance(star, fail.worst_u, fail.worst_v) >
        1.2 * dw(s, fail.worst_u, fail.worst_v));

  SpannerGraph cut = star;
  cut.edges.erase(cut.edges.begin());  // drop a bridge
  const auto unreach = verify_spanner(cut, dw_metric(s), 10.0);
  CHECK_FALSE(unreach.pass);
  CHECK_FALSE(unreach.connected);

  SpannerGraph bad = complete;
  bad.edges[0].w *= 1.001;  // edge weight no longer the metric distance
  CHECK_FALSE(verify_spanner(bad, dw_metric(s), 2.0).pass);
  CHECK_FALSE(check_edge_weights(bad, dw_metric(s)));
}

TEST_CASE("graph JSON round trip and validation") {
  SpannerGraph g;
  g.n = 4;
  g.add_edge(2, 0, 1.25);
  g.add_edge(1, 3, 0.5);
  const std::string text = graph_to_json(g);
  const SpannerGraph back = graph_from_json(text);
  CHECK(back.n == 4);
  REQUIRE(back.edges.size() == 2);
  CHECK(back.edges[0].u == 0);
  CHECK(back.edges[0].v == 2);
  CHECK(back.edges[0].w == 1.25);
  CHECK(graph_to_json(back) == text);

  CHECK_THROWS_AS(graph_from_json("{\"n\":2,\"edges\":[[0,0,1.0]]}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(graph_from_json("{\"n\":2,\"edges\":[[0,1,1.0],[1,0,2.0]]}"),
                  std::invalid_argument);
}

TEST_CASE("point set JSON round trip") {
  const PointSet s = gen_weighted_points(17, 3, 2.0, 0.5, 42);
  const std::string text = point_set_to_json(s);
  const PointSet back = point_set_from_json(text);
  REQUIRE(back.size() == s.size());
  CHECK(back.dim == 3);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back[i].weight == s[i].weight);
    CHECK(back[i].coords == s[i].coords);
  }
  CHECK(point_set_to_json(back) == text);

  CHECK_THROWS(point_set_from_json(
      "{\"dim\":2,\"points\":[{\"coords\":[1.0],\"weight\":0.0}]}"));
  CHECK_THROWS(point_set_from_json(
      "{\"dim\":1,\"points\":[{\"coords\":[1.0],\"weight\":-2.0}]}"));
}
