#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "thetapi/error.hpp"
#include "thetapi/spaces.hpp"

using namespace thetapi;

namespace {

constexpr double kPi = std::numbers::pi;

// Re-validates a generated space through the matrix constructor.
void check_metric(const FiniteMetricSpace& s) {
  CHECK_NOTHROW(FiniteMetricSpace::from_matrix(s.distance_matrix(), s.basepoint()));
}

}  // namespace

TEST_SUITE("spaces") {

TEST_CASE("from_points basics") {
  auto one = FiniteMetricSpace::from_points({{0.0, 0.0}});
  CHECK(one.size() == 1);
  CHECK(one.dist(0, 0) == 0.0);

  auto sq = FiniteMetricSpace::from_points({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  // brute force over the six pairs
  for (Vertex i = 0; i < 4; ++i)
    for (Vertex j = i + 1; j < 4; ++j) {
      const double dx = sq.coord(i)[0] - sq.coord(j)[0], dy = sq.coord(i)[1] - sq.coord(j)[1];
      const double expect = (j - i) % 2 == 0 ? 2.0 : std::sqrt(2.0);
      CHECK(sq.dist(i, j) == doctest::Approx(std::sqrt(dx * dx + dy * dy)).epsilon(1e-15));
      CHECK(sq.dist(i, j) == doctest::Approx(expect).epsilon(1e-15));
    }

  auto e = FiniteMetricSpace::from_points({{0, 0}, {3, 4}});
  CHECK(e.dist(0, 1) == 5.0);
  auto l1 = FiniteMetricSpace::from_points({{0, 0}, {3, 4}}, Metric::l1);
  CHECK(l1.dist(0, 1) == 7.0);
  auto linf = FiniteMetricSpace::from_points({{0, 0}, {3, 4}}, Metric::linf);
  CHECK(linf.dist(0, 1) == 4.0);
}

TEST_CASE("from_points rejects bad input") {
  CHECK_THROWS_AS(FiniteMetricSpace::from_points({}), ValidationError);
  CHECK_THROWS_AS(FiniteMetricSpace::from_points({{0, 0}}, Metric::euclidean, 1), ValidationError);
  CHECK_THROWS_AS(FiniteMetricSpace::from_points({{0, 0}, {1}}), ValidationError);
}

TEST_CASE("from_matrix validation") {
  CHECK(FiniteMetricSpace::from_matrix({{0}}).size() == 1);
  CHECK(FiniteMetricSpace::from_matrix({{0, 1}, {1, 0}}).size() == 2);
  try {
    FiniteMetricSpace::from_matrix({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
    FAIL("expected a triangle violation");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("(0,2)") != std::string::npos);
    CHECK(msg.find("via 1") != std::string::npos);
  }
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({{0, 1}, {2, 0}}), ValidationError);
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({{0, -1}, {-1, 0}}), ValidationError);
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({{1, 1}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({{0, 1}}), ValidationError);
  // noise below the tolerance is accepted
  CHECK_NOTHROW(FiniteMetricSpace::from_matrix({{0, 1, 2 + 5e-10}, {1, 0, 1}, {2 + 5e-10, 1, 0}}));
}

TEST_CASE("gen_circle chords") {
  auto c4 = gen_circle(1.0, 4);
  CHECK(c4.dist(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  auto c5 = gen_circle(1.0, 5);
  CHECK(c5.dist(0, 1) == doctest::Approx(1.17557050458).epsilon(1e-10));
  CHECK(c5.dist(0, 2) == doctest::Approx(1.90211303259).epsilon(1e-10));
  CHECK(gen_circle(1.0, 1).size() == 1);
  for (std::size_t count : {3u, 7u, 12u, 33u}) {
    auto c = gen_circle(2.5, count);
    for (std::size_t k = 1; k < count; ++k) {
      const double expect = 2 * 2.5 * std::sin(kPi * static_cast<double>(k) / static_cast<double>(count));
      CHECK(std::abs(c.dist(0, k) - expect) <= 1e-12 * expect);
    }
  }
}

TEST_CASE("hawaiian earring layout") {
  auto one = gen_hawaiian_earring(1, {8});
  CHECK(one.size() == 8);
  CHECK(one.basepoint() == 0);
  CHECK(one.coord(0) == Point{0.0, 0.0});
  auto two = gen_hawaiian_earring(2, {8, 6});
  CHECK(two.size() == 8 + 6 - 1);
  std::size_t origins = 0;
  for (Vertex v = 0; v < two.size(); ++v)
    if (std::hypot(two.coord(v)[0], two.coord(v)[1]) < 1e-12) ++origins;
  CHECK(origins == 1);
  CHECK(earring_default_samples(3, 0.05) == std::vector<std::size_t>{126, 63, 42});
  CHECK(earring_default_samples(3, 1.0) == std::vector<std::size_t>{8, 8, 8});
  check_metric(two);
}

TEST_CASE("telescope octagons") {
  auto t = gen_telescope(3, 16, true);
  for (std::size_t n = 0; n < 3; ++n) {
    const auto oct = telescope_octagon(t, n);
    const double edge = std::ldexp(1.0, -static_cast<int>(n + 1)) * 2 * std::sin(kPi / 8);
    for (std::size_t k = 0; k < 8; ++k) CHECK(t.dist(oct[k], oct[(k + 1) % 8]) == doctest::Approx(edge).epsilon(1e-12));
  }
  CHECK(std::abs(2 * std::sin(kPi / 8) - 0.76537) < 1e-5);
  auto bare = gen_telescope(1, 8, false);
  for (Vertex v = 0; v < bare.size(); ++v) CHECK(bare.coord(v)[0] <= 1.0 + 1e-12);
  CHECK(gen_telescope(2, 8, true).metadata.at("truncation_depth") == "2");
}

TEST_CASE("circle product metric is the sum of factor chords") {
  auto p = gen_circle_product(2, {8, 8});
  CHECK(p.size() == 64);
  // ids differing only in factor 2 (index = i0 + 8 * i1)
  CHECK(p.dist(0, 8) == doctest::Approx(0.5 * 2 * std::sin(kPi / 8)).epsilon(1e-12));
  auto c1 = gen_circle(1.0, 5), c2 = gen_circle(0.5, 4), c3 = gen_circle(0.25, 3);
  auto q = gen_circle_product(3, {5, 4, 3});
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Vertex> pick(0, q.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const Vertex a = pick(rng), b = pick(rng);
    const double sum = c1.dist(a % 5, b % 5) + c2.dist(a / 5 % 4, b / 5 % 4) + c3.dist(a / 20, b / 20);
    CHECK(std::abs(q.dist(a, b) - sum) <= 1e-12);
  }
  CHECK_THROWS_AS(gen_circle_product(2, {400, 400}), ValidationError);
  CHECK(gen_circle_product(1).size() == 8);
}

TEST_CASE("other generators are deterministic metric spaces") {
  auto w0 = gen_hawaiian_window(0, 0.25);
  auto w1 = gen_hawaiian_window(1, 0.25);
  auto w2 = gen_hawaiian_window(2, 0.25);
  CHECK(w0.size() == 32);
  CHECK(w1.size() > w0.size());
  CHECK(w2.size() > w1.size());
  CHECK(w0.coord(w0.basepoint()) == Point{1.0, 1.0});

  auto flat = gen_sine_space(SineVariant::flat, 0.05);
  bool top = false, bottom = false;
  for (const auto& p : flat.coords()) {
    top |= std::hypot(p[0], p[1] - 1) < 1e-12;
    bottom |= std::hypot(p[0], p[1] + 1) < 1e-12;
  }
  CHECK(top);
  CHECK(bottom);
  auto sq = gen_sine_space(SineVariant::three_squares, 0.3);
  CHECK(sq.dimension() == 3);

  CHECK_THROWS_AS(gen_annulus(1.0, 1.0), ValidationError);
  auto ann = gen_annulus(0.5, 1.0, 0.1);
  for (const auto& p : ann.coords()) {
    const double r = std::hypot(p[0], p[1]);
    CHECK(r >= 0.5 - 1e-12);
    CHECK(r <= 1.0 + 1e-12);
  }
  CHECK(annulus_inner_ring(ann).size() >= 8);

  auto tree = gen_circle_tree(3, 0.1);
  CHECK(tree.dimension() == 3);

  for (const auto* s : {&w2, &flat, &sq, &ann, &tree}) check_metric(*s);
  CHECK(gen_hawaiian_window(2, 0.25).content_hash() == w2.content_hash());
  CHECK(gen_annulus(0.5, 1.0, 0.1).coords() == ann.coords());
}

TEST_CASE("circle tree level sizes") {
  auto tree = gen_circle_tree(4, 0.1);
  // level n lives on z = n with 2^n ring points on the unit circle
  for (std::size_t n = 0; n < 4; ++n) {
    std::size_t on_ring = 0;
    for (const auto& p : tree.coords())
      if (std::abs(p[2] - static_cast<double>(n)) < 1e-12 && std::abs(std::hypot(p[0], p[1]) - 1.0) < 1e-12) ++on_ring;
    CHECK(on_ring == (std::size_t{1} << n));
  }
}

TEST_CASE("polyline validation") {
  PolylinePath ok{{{0, 0}, {1, 0}}, false};
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.length() == 1.0);
  PolylinePath short_one{{{0, 0}}, false};
  CHECK_THROWS_AS(short_one.validate(), ValidationError);
  PolylinePath open_closed{{{0, 0}, {1, 0}}, true};
  CHECK_THROWS_AS(open_closed.validate(), ValidationError);
}

}  // TEST_SUITE
