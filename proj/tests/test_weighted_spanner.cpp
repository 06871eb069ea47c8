#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "geospan/weighted_spanner.hpp"
#include "oracles.hpp"

using namespace geospan;

namespace {

Metric dw_metric(const PointSet& s) {
  return [&s](std::size_t i, std::size_t j) { return dw(s, i, j); };
}

// Exact assertions of every clustering invariant from the construction.
void check_clustering(const PointSet& s, const Clustering& cl, double eps) {
  std::vector<bool> covered(s.size(), false);
  for (const auto& c : cl.clusters) {
    bool center_in = false;
    for (std::size_t m : c.members) {
      REQUIRE(!covered[m]);
      covered[m] = true;
      if (m == c.center) center_in = true;
      CHECK(euclidean(s[m], s[c.center]) <= eps * s[m].weight);
      CHECK(s[c.center].weight <= s[m].weight);  // min-weight center
      // property (ii)
      CHECK(leq_tol(dw_distance(s[m], s[c.center]), (2.0 + eps) * s[m].weight));
    }
    REQUIRE(center_in);
  }
  for (bool b : covered) REQUIRE(b);  // partition
  // center separation
  const auto centers = cl.centers();
  for (std::size_t a = 0; a < centers.size(); ++a)
    for (std::size_t b = a + 1; b < centers.size(); ++b) {
      const double d = euclidean(s[centers[a]], s[centers[b]]);
      const double wmin = std::min(s[centers[a]].weight, s[centers[b]].weight);
      CHECK(d > eps * wmin);
    }
}

}  // namespace

TEST_CASE("clustering hand traces") {
  PointSet one;
  one.dim = 2;
  one.points = {{{0, 0}, 5}};
  const auto cl1 = cluster_points(one, 0.25);
  REQUIRE(cl1.clusters.size() == 1);
  CHECK(cl1.clusters[0].center == 0);

  PointSet two;
  two.dim = 2;
  two.points = {{{0, 0}, 1}, {{10, 0}, 1}};
  const auto cl2 = cluster_points(two, 0.1);
  CHECK(cl2.clusters.size() == 2);  // threshold 0.1 < 10

  PointSet close;
  close.dim = 2;
  close.points = {{{0, 0}, 1}, {{0.05, 0}, 2}};
  const auto cl3 = cluster_points(close, 0.1);
  REQUIRE(cl3.clusters.size() == 1);  // 0.05 <= 0.1 * 2
  CHECK(cl3.clusters[0].center == 0);
  CHECK(cl3.clusters[0].members.size() == 2);

  CHECK(cluster_points(PointSet{2, {}}, 0.1).clusters.empty());
}

TEST_CASE("clustering invariants on random instances") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (double eps : {0.1, 0.25, 0.41}) {
      const PointSet s = gen_weighted_points(120, 2, 1.0, 0.8, seed);
      check_clustering(s, cluster_points(s, eps), eps);
    }
  }
}

TEST_CASE("same-cluster pairs have a two-hop path within (2+eps)") {
  const double eps = 0.3;
  const PointSet s = gen_weighted_points(150, 2, 1.0, 2.0, 77);
  const auto cl = cluster_points(s, eps);
  for (const auto& c : cl.clusters)
    for (std::size_t a : c.members)
      for (std::size_t b : c.members) {
        if (a == b) continue;
        const double through_center =
            dw_distance(s[a], s[c.center]) + dw_distance(s[c.center], s[b]);
        CHECK(leq_tol(through_center, (2.0 + eps) * dw_distance(s[a], s[b])));
      }
}

TEST_CASE("backbone tiny cases") {
  PointSet empty1;
  empty1.dim = 2;
  empty1.points = {{{0, 0}, 1}};
  CHECK(build_backbone(empty1, 0.2).edges.empty());

  PointSet duo;
  duo.dim = 2;
  duo.points = {{{0, 0}, 1}, {{4, 0}, 2}};
  const auto g = build_backbone(duo, 0.2);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].w == doctest::Approx(7.0));
}

TEST_CASE("backbone ratio on 50 random centers is at most 1+eps") {
  const double eps = 0.25;
  const PointSet s = gen_weighted_points(50, 2, 1.0, 1.0, 11);
  const auto g = build_backbone(s, eps);
  const double ratio = oracles::brute_ratio(g, dw_metric(s));
  REQUIRE(ratio > 0.0);
  CHECK(leq_tol(ratio, 1.0 + eps));
}

TEST_CASE("aw spanner base cases and eps gate") {
  PointSet one;
  one.dim = 2;
  one.points = {{{0, 0}, 1}};
  CHECK(build_aw_spanner(one, 0.25).edges.empty());

  PointSet duo;
  duo.dim = 2;
  duo.points = {{{0, 0}, 1}, {{1, 0}, 3}};
  const auto g2 = build_aw_spanner(duo, 0.25);
  REQUIRE(g2.edges.size() == 1);
  const auto r = spanning_ratio(g2, dw_metric(duo));
  CHECK(r.ratio == doctest::Approx(1.0));

  CHECK_THROWS_AS(build_aw_spanner(duo, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(build_aw_spanner(duo, 0.0), std::invalid_argument);
  CHECK_NOTHROW(build_aw_spanner(duo, aw_eps_limit()));
}

TEST_CASE("aw spanner end-to-end ratio on random instances") {
  for (std::uint64_t seed : {100u, 200u}) {
    const PointSet s = gen_weighted_points(100, 2, 1.0, 0.5, seed);
    const double eps = 0.25;
    const auto g = build_aw_spanner(s, eps);
    g.validate();
    CHECK(check_edge_weights(g, dw_metric(s)));
    const double ratio = oracles::brute_ratio(g, dw_metric(s));
    REQUIRE(ratio > 0.0);
    CHECK(leq_tol(ratio, 2.0 + eps));
    const auto rep = verify_spanner(g, dw_metric(s), 2.0 + eps);
    CHECK(rep.pass);
  }
}

TEST_CASE("aw spanner in d=1 and d=3") {
  for (std::size_t dim : {std::size_t{1}, std::size_t{3}}) {
    const PointSet s = gen_weighted_points(80, dim, 1.0, 0.5, 300 + dim);
    const auto g = build_aw_spanner(s, 0.2);
    const double ratio = oracles::brute_ratio(g, dw_metric(s));
    REQUIRE(ratio > 0.0);
    CHECK(leq_tol(ratio, 2.2));
  }
}

TEST_CASE("zero weights degenerate to a pure greedy Euclidean spanner") {
  PointSet s = gen_weighted_points(60, 2, 1.0, 0.0, 9);
  for (auto& p : s.points) p.weight = 0.0;
  const double eps = 0.3;
  const auto full = build_aw_spanner_full(s, eps);
  CHECK(full.clustering.clusters.size() == s.size());  // every point a center
  const double ratio = oracles::brute_ratio(full.graph, dw_metric(s));
  CHECK(leq_tol(ratio, 1.0 + eps));  // plain (1+eps) Euclidean greedy
}

TEST_CASE("clustering JSON dump shape") {
  PointSet s;
  s.dim = 2;
  s.points = {{{0, 0}, 1}, {{0.01, 0}, 2}};
  const auto cl = cluster_points(s, 0.2);
  const auto text = cl.to_json();
  CHECK(text.find("\"clusters\"") != std::string::npos);
  CHECK(text.find("\"center\"") != std::string::npos);
  CHECK(text.find("\"members\"") != std::string::npos);
}
