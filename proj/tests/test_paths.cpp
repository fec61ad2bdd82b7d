#include <doctest.h>

#include <random>

#include "thetapi/error.hpp"
#include "thetapi/paths.hpp"
#include "thetapi/words.hpp"

using namespace thetapi;

namespace {

SpaceRef square() { return share(gen_circle(1.0, 4)); }

PolylinePath random_polyline(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PolylinePath poly;
  const std::size_t n = 2 + rng() % 5;
  for (std::size_t i = 0; i < n; ++i) poly.vertices.push_back({u(rng), u(rng)});
  return poly;
}

}  // namespace

TEST_SUITE("paths") {

TEST_CASE("validate") {
  auto sq = square();
  CHECK(!validate(ThetaPath::constant(sq, 0.1, 2)));
  CHECK(!validate(ThetaPath(sq, 1.5, {0, 1, 2, 3, 0})));
  auto bad = validate(ThetaPath(sq, 1.0, {0, 1, 2, 3, 0}));
  REQUIRE(bad);
  CHECK(bad->index == 0);
  CHECK(bad->distance == doctest::Approx(1.41421356).epsilon(1e-8));
  CHECK_THROWS_AS(ThetaPath::checked(sq, 1.0, {0, 1}), ValidationError);
  CHECK_THROWS_AS(ThetaPath(sq, 1.0, {}), ValidationError);
  CHECK_THROWS_AS(ThetaPath(sq, 1.0, {0, 9}), ValidationError);
}

TEST_CASE("lazify and delazify") {
  auto sq = square();
  ThetaPath p(sq, 1.5, {0, 1, 2});
  CHECK(lazify(p, {0, 1, 2}) == p);
  CHECK(lazify(ThetaPath(sq, 1.5, {0, 1}), {0, 0, 1}).points() == std::vector<Vertex>{0, 0, 1});
  CHECK(delazify(std::vector<Vertex>{0, 0, 1, 1}) == std::vector<Vertex>{0, 1});
  CHECK_THROWS_AS(lazify(p, {0, 2}), ValidationError);
  CHECK_THROWS_AS(lazify(p, {0, 1, 0, 1, 2}), ValidationError);
  CHECK_THROWS_AS(lazify(p, {0, 1}), ValidationError);
  CHECK(pad_to_length(p, 5).points() == std::vector<Vertex>{0, 1, 2, 2, 2});

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> schedule{0};
    while (schedule.back() < 2) schedule.push_back(schedule.back() + rng() % 2);
    auto q = lazify(p, schedule);
    CHECK(!validate(q));
    CHECK(delazify(q) == delazify(p));
  }
}

TEST_CASE("concat and invert") {
  auto sq = square();
  ThetaPath ab(sq, 1.5, {0, 1}), bc(sq, 1.5, {1, 2});
  CHECK(concat(ab, bc).points() == std::vector<Vertex>{0, 1, 2});
  CHECK(invert(invert(concat(ab, bc))) == concat(ab, bc));
  CHECK(concat(ab, ThetaPath::constant(sq, 1.5, 1)) == ab);
  CHECK_THROWS_AS(concat(ab, ab), ValidationError);
  CHECK_THROWS_AS(concat(ab, ThetaPath(sq, 2.0, {1, 2})), ValidationError);
}

TEST_CASE("the two-step contraction of a 4-step loop") {
  auto sq = square();
  ThetaPath loop(sq, 1.5, {0, 1, 2, 3, 0});
  GridHomotopy h{1.5, {{0, 1, 2, 3, 0}, {0, 1, 1, 0, 0}, {0, 0, 0, 0, 0}}, true};
  CHECK(verify_grid_homotopy(h, loop, ThetaPath::constant(sq, 1.5, 0)).ok);
  GridHomotopy self{1.5, {{0, 1, 2, 3, 0}}, true};
  CHECK(verify_grid_homotopy(self, loop, loop).ok);
}

TEST_CASE("verifier reports violations") {
  auto sq = square();
  ThetaPath loop(sq, 1.5, {0, 1, 2, 3, 0});
  auto constant = ThetaPath::constant(sq, 1.5, 0);

  GridHomotopy jump{1.5, {{0, 1, 2, 3, 0}, {0, 0, 0, 0, 0}}, true};
  auto r = verify_grid_homotopy(jump, loop, constant);
  CHECK(!r.ok);
  CHECK(r.message == "column step exceeds theta");
  CHECK(r.column == 2);
  CHECK(r.distance == doctest::Approx(2.0));

  GridHomotopy ragged{1.5, {{0, 1, 2, 3, 0}, {0, 0}}, true};
  CHECK(verify_grid_homotopy(ragged, loop, constant).row == 1);

  GridHomotopy moving{1.5, {{0, 1, 2, 3, 0}, {1, 1, 1, 0, 0}, {0, 0, 0, 0, 0}}, true};
  CHECK(verify_grid_homotopy(moving, loop, constant).message == "start point moves");
  moving.endpoints_fixed = false;
  CHECK(verify_grid_homotopy(moving, loop, constant).ok);

  GridHomotopy wrong_end{1.5, {{0, 1, 2, 3, 0}, {0, 1, 1, 0, 0}}, true};
  CHECK(verify_grid_homotopy(wrong_end, loop, constant).message ==
        "last row is not a lazification of the target path");
  CHECK(!verify_grid_homotopy(GridHomotopy{1.5, {}, true}, loop, constant).ok);
}

TEST_CASE("no short homotopy contracts the pentagon") {
  // every three-row certificate loop -> middle -> constant on the 5-gon at 1.3
  auto c5 = share(gen_circle(1.0, 5));
  ThetaPath loop(c5, 1.3, {0, 1, 2, 3, 4, 0});
  auto constant = ThetaPath::constant(c5, 1.3, 0);
  std::size_t accepted = 0;
  std::vector<Vertex> mid{0, 0, 0, 0, 0, 0};
  for (std::size_t code = 0; code < 625; ++code) {
    std::size_t c = code;
    for (std::size_t j = 1; j <= 4; ++j, c /= 5) mid[j] = c % 5;
    GridHomotopy h{1.3, {loop.points(), mid, std::vector<Vertex>(6, 0)}, true};
    if (verify_grid_homotopy(h, loop, constant).ok) ++accepted;
    GridHomotopy two{1.3, {loop.points(), mid}, true};
    if (verify_grid_homotopy(two, loop, constant).ok) ++accepted;
  }
  CHECK(accepted == 0);
}

TEST_CASE("minimize keeps certificates valid") {
  auto sq = square();
  ThetaPath loop(sq, 1.5, {0, 1, 2, 3, 0});
  GridHomotopy h{1.5,
                 {{0, 1, 2, 3, 0, 0}, {0, 1, 2, 3, 0, 0}, {0, 1, 1, 0, 0, 0}, {0, 1, 1, 0, 0, 0}, {0, 0, 0, 0, 0, 0}},
                 true};
  auto constant = ThetaPath::constant(sq, 1.5, 0);
  REQUIRE(verify_grid_homotopy(h, loop, constant).ok);
  auto m = minimize_certificate(*sq, h);
  CHECK(verify_grid_homotopy(m, loop, constant).ok);
  CHECK(m.rows.size() <= 3);
  CHECK(m.rows.front().size() == 5);
}

TEST_CASE("discretize examples") {
  PolylinePath seg{{{0, 0}, {1, 0}}, false};
  auto d = discretize(seg, 0.5);
  CHECK(d.breakpoints == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(as_theta_path(d).size() == 3);

  auto tiny = discretize(PolylinePath{{{0, 0}, {0.1, 0.1}}, false}, 0.5);
  CHECK(tiny.points.size() == 2);

  PolylinePath sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}}, true};
  auto ds = discretize(sq, 0.5);
  CHECK(ds.breakpoints.size() == 9);
  auto path = as_theta_path(ds);
  CHECK(path.size() == 9);
  CHECK(path.closed());
  CHECK(path.space()->size() == 8);
  CHECK(!validate(path));

  CHECK_THROWS_AS(discretize(seg, 0.0), ValidationError);
}

TEST_CASE("discretisations validate and refine coherently") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> scale(0.05, 0.8);
  for (int trial = 0; trial < 100; ++trial) {
    auto poly = random_polyline(rng);
    const double theta = scale(rng);
    auto a = discretize(poly, theta);
    auto b = discretize(poly, theta, {true, 0.37, {}});
    auto pa = as_theta_path(a);
    CHECK(!validate(pa));
    // coarser scales accept the same path
    CHECK(!validate(pa.at_scale(theta * 1.5)));
    auto cert = refinement_certificate(poly, a, b);
    CHECK(verify_grid_homotopy(cert.homotopy, cert.first, cert.second).ok);
  }
}

TEST_CASE("bent pieces stay inside the ball") {
  // a hairpin: without vertex breakpoints the chord test alone would pass
  PolylinePath hairpin{{{0, 0}, {1, 0}, {0, 0.01}}, false};
  auto d = discretize(hairpin, 1.5, {false, 1.0, {}});
  for (std::size_t i = 0; i + 1 < d.breakpoints.size(); ++i) {
    for (double t = 0; t <= 1.0; t += 0.01) {
      const double s = d.breakpoints[i] + t * (d.breakpoints[i + 1] - d.breakpoints[i]);
      CHECK(point_distance(d.points[i], point_at(hairpin, s), Metric::euclidean) <= 1.5 + 1e-12);
    }
  }
}

TEST_CASE("snapping onto a cloud") {
  auto cloud = share(gen_circle(1.0, 16));
  std::vector<Point> ring;
  for (int k = 0; k <= 16; ++k) ring.push_back({1.02 * std::cos(k * M_PI / 8), 1.02 * std::sin(k * M_PI / 8)});
  ring.back() = ring.front();
  PolylinePath poly{ring, true};
  auto snapped = discretize_onto(poly, 0.45, cloud, 0.1);
  CHECK(snapped.snap_radius == doctest::Approx(0.02).epsilon(1e-9));
  CHECK(snapped.effective_theta == doctest::Approx(0.49).epsilon(1e-9));
  CHECK(!validate(snapped.path));
  CHECK_THROWS_AS(discretize_onto(poly, 0.45, cloud, 0.001), ValidationError);
}

TEST_CASE("loop words") {
  auto sq = square();
  auto g = ThetaGraph::build(sq, 1.5);
  SpanningData s(g, 0);
  CHECK(loop_to_word(ThetaPath::constant(sq, 1.5, 0), s).empty());
  CHECK(loop_to_word(ThetaPath(sq, 1.5, {0, 1, 2, 3, 0}), s).size() == 1);
  ThetaPath p(sq, 1.5, {0, 1, 2, 3, 0});
  CHECK(loop_to_word(concat(p, invert(p)), s).empty());
  ThetaPath q(sq, 1.5, {0, 3, 2, 1, 2, 3, 0});
  CHECK(loop_to_word(concat(p, q), s) == free_reduce(concat(loop_to_word(p, s), loop_to_word(q, s))));
  CHECK_THROWS_AS(loop_to_word(ThetaPath(sq, 1.5, {1, 2, 1}), s), ValidationError);
  CHECK_THROWS_AS(loop_to_word(ThetaPath(sq, 1.5, {0, 1}), s), ValidationError);
  CHECK_THROWS_AS(walk_to_word({0, 2}, s), ValidationError);
}

}  // TEST_SUITE
