#include <doctest.h>

#include <random>

#include "thetapi/error.hpp"
#include "thetapi/oracle.hpp"
#include "thetapi/paths.hpp"
#include "thetapi/theta_graph.hpp"

using namespace thetapi;

namespace {

SpaceRef random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t dim = 2) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts(n, Point(dim));
  for (auto& p : pts)
    for (auto& c : p) c = u(rng);
  return share(FiniteMetricSpace::from_points(std::move(pts)));
}

// Graph from a 0/1 adjacency list, realised as a path metric.
SpaceRef graph_space(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 1e9));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [a, b] : edges) d[a][b] = d[b][a] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (auto& x : row)
      if (x > 1e8) x = 100;
  return share(FiniteMetricSpace::from_matrix(d));
}

}  // namespace

TEST_SUITE("theta_graph") {

TEST_CASE("4-gon at 1.5 is C4") {
  auto sq = share(gen_circle(1.0, 4));
  auto g = ThetaGraph::build(sq, 1.5);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
  auto cycles = short_cycles(g);
  CHECK(cycles.triangles.empty());
  CHECK(cycles.squares.size() == 1);
  CHECK(spanning_tree(g, 0).generators().size() == 1);
}

TEST_CASE("closed adjacency and extremes") {
  auto s = share(FiniteMetricSpace::from_matrix({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
  CHECK(ThetaGraph::build(s, 1.0).edge_count() == 2);
  CHECK(ThetaGraph::build(s, 2.0).is_complete());
  CHECK(ThetaGraph::build(s, 0.999).edge_count() == 0);
  CHECK(components(ThetaGraph::build(s, 0.5)).size() == 3);
  CHECK(components(ThetaGraph::build(s, 5.0)).size() == 1);
  CHECK_THROWS_AS(ThetaGraph::build(s, 0.0), ValidationError);
  CHECK_THROWS_AS(ThetaGraph::build(s, -1.0), ValidationError);
}

TEST_CASE("components are ordered by smallest member") {
  auto s = graph_space(5, {{0, 3}, {1, 2}, {2, 4}});
  auto comps = components(ThetaGraph::build(s, 1.0));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<Vertex>{0, 3});
  CHECK(comps[1] == std::vector<Vertex>{1, 2, 4});
}

TEST_CASE("spanning trees") {
  auto path = graph_space(3, {{0, 1}, {1, 2}});
  SpanningData sp(ThetaGraph::build(path, 1.0), 0);
  CHECK(sp.parent(1) == 0);
  CHECK(sp.parent(2) == 1);
  CHECK(sp.parent(0) == kNoVertex);
  CHECK(sp.generators().empty());

  auto star = graph_space(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(SpanningData(ThetaGraph::build(star, 1.0), 2).generators().empty());

  // BFS ties go to the smaller id
  auto c4 = graph_space(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  SpanningData t(ThetaGraph::build(c4, 1.0), 0);
  CHECK(t.parents() == std::vector<Vertex>{kNoVertex, 0, 1, 0});
  CHECK(t.generators() == std::vector<Edge>{{2, 3}});
  CHECK(t.tree_path_from_root(2) == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("K4 and C5 short cycles") {
  auto k4 = graph_space(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  auto c = short_cycles(ThetaGraph::build(k4, 1.0));
  CHECK(c.triangles.size() == 4);
  CHECK(c.squares.size() == 3);
  CHECK(short_cycles(ThetaGraph::build(k4, 1.0), true).squares.empty());
  auto c5 = short_cycles(ThetaGraph::build(share(gen_circle(1.0, 5)), 1.3));
  CHECK(c5.triangles.empty());
  CHECK(c5.squares.empty());
}

TEST_CASE("short cycles match brute force on random small graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    std::vector<Edge> edges;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        if (rng() % 2) edges.emplace_back(a, b);
    auto g = ThetaGraph::build(graph_space(n, edges), 1.0);
    auto fast = short_cycles(g);
    auto slow = oracle::short_cycles(g);
    CHECK(fast.triangles == slow.triangles);
    CHECK(fast.squares == slow.squares);
  }
}

TEST_CASE("critical scales") {
  auto c4 = gen_circle(1.0, 4);
  auto cs = critical_scales(c4);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(cs[1] == doctest::Approx(2.0));
  CHECK(critical_scales(FiniteMetricSpace::from_points({{0, 0}})).empty());
  auto tri = FiniteMetricSpace::from_matrix({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(critical_scales(tri) == std::vector<double>{1.0});
}

TEST_CASE("monotone edges and constancy between critical scales") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_cloud(rng, 12);
    const auto cs = critical_scales(*s);
    for (std::size_t i = 0; i + 1 < cs.size(); i += 3) {
      auto lo = ThetaGraph::build(s, cs[i]);
      auto mid = ThetaGraph::build(s, 0.5 * (cs[i] + cs[i + 1]));
      auto near_hi = ThetaGraph::build(s, cs[i] + 0.9 * (cs[i + 1] - cs[i]));
      auto hi = ThetaGraph::build(s, cs[i + 1]);
      CHECK(mid.edges() == near_hi.edges());
      CHECK(lo.edges() == mid.edges());
      CHECK(hi.edge_count() == mid.edge_count() + 1);
      for (auto e : mid.edges()) CHECK(hi.adjacent(e.first, e.second));
    }
  }
}

TEST_CASE("grid acceleration matches the naive pair scan") {
  std::mt19937_64 rng(3);
  for (std::size_t dim : {2u, 3u}) {
    auto s = random_cloud(rng, 400, dim);
    for (double theta : {0.02, 0.07, 0.2}) {
      auto a = ThetaGraph::build(s, theta, ThetaGraph::Method::naive);
      auto b = ThetaGraph::build(s, theta, ThetaGraph::Method::grid);
      CHECK(a.edges() == b.edges());
    }
  }
}

TEST_CASE("walks with stays are exactly the valid paths") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_cloud(rng, 8);
    const double theta = 0.3;
    auto g = ThetaGraph::build(s, theta);
    std::vector<Vertex> seq(6);
    for (auto& v : seq) v = rng() % 8;
    bool walk = true;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) walk &= seq[i] == seq[i + 1] || g.adjacent(seq[i], seq[i + 1]);
    CHECK(walk == !validate(ThetaPath(s, theta, seq)).has_value());
  }
}

TEST_CASE("dominated collapse keeps the requested vertex") {
  auto k4 = graph_space(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  auto c = collapse_dominated(ThetaGraph::build(k4, 1.0), 2);
  CHECK(c.removed == 3);
  CHECK(c.retraction == std::vector<Vertex>{2, 2, 2, 2});
}

}  // TEST_SUITE
