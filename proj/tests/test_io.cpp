#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "thetapi/error.hpp"
#include "thetapi/io.hpp"

using namespace thetapi;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "thetapi_test_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5) == "-2.5");
}

TEST_CASE("point clouds and sidecars") {
  auto s = gen_hawaiian_earring(2, {8, 6}).with_basepoint(3);
  auto back = parse_point_csv(point_csv(s), space_sidecar(s));
  CHECK(back.coords() == s.coords());
  CHECK(back.basepoint() == 3);
  CHECK(back.content_hash() == s.content_hash());
  CHECK(back.metadata.at("generator") == "hawaiian_earring");
  CHECK(back.metadata.at("samples") == s.metadata.at("samples"));
  CHECK(space_sidecar(back) == space_sidecar(s));

  auto prod = gen_circle_product(2, {5, 4});
  auto pb = parse_point_csv(point_csv(prod), space_sidecar(prod));
  CHECK(pb.metric() == Metric::product_l1);
  CHECK(pb.dist(1, 7) == prod.dist(1, 7));

  const auto path = scratch("earring.csv");
  write_text(path.string(), point_csv(s));
  write_text(sidecar_path(path.string()), space_sidecar(s).dump());
  CHECK(read_space(path.string()).basepoint() == 3);
  fs::remove(sidecar_path(path.string()));
  CHECK(read_space(path.string()).basepoint() == 0);
}

TEST_CASE("distance matrices") {
  auto c = gen_circle(1.0, 6);
  auto m = parse_matrix_csv(matrix_csv(c));
  REQUIRE(m.size() == 6);
  for (Vertex i = 0; i < 6; ++i)
    for (Vertex j = 0; j < 6; ++j) CHECK(m.dist(i, j) == c.dist(i, j));
  CHECK_THROWS_AS(parse_matrix_csv("0,1\n2,0\n"), ValidationError);
  CHECK_THROWS_AS(parse_matrix_csv("0,1\n1,x\n"), ValidationError);

  const auto path = scratch("matrix.csv");
  write_text(path.string(), "# three points on a line\n0,1,2\n1,0,1\n2,1,0\n");
  CHECK(read_space(path.string()).dist(0, 2) == 2.0);
}

TEST_CASE("malformed clouds are rejected") {
  CHECK_THROWS_AS(parse_point_csv("x1,x2\n", std::nullopt), ValidationError);
  CHECK_THROWS_AS(parse_point_csv("x1,x2\n1,2\n3\n", std::nullopt), ValidationError);
  CHECK_THROWS_AS(parse_point_csv("x1,x2\n1,2\n", Json{{"metric", "cosine"}}), ValidationError);
  CHECK_THROWS_AS(read_text(scratch("missing.csv").string()), ValidationError);
}

TEST_CASE("write_text replaces atomically") {
  const auto path = scratch("out.txt");
  write_text(path.string(), "first");
  write_text(path.string(), "second");
  CHECK(read_text(path.string()) == "second");
  CHECK(!fs::exists(path.string() + ".partial"));
  CHECK_THROWS_AS(write_text((scratch("no_such_dir") / "x" / "y.txt").string(), "z"), ValidationError);
}

TEST_CASE("graphs") {
  auto sq = share(gen_circle(1.0, 4));
  auto g = ThetaGraph::build(sq, 1.5);
  const auto dot = graph_dot(g);
  CHECK(dot.rfind("graph theta {", 0) == 0);
  CHECK(dot.find("0 -- 1 [len=1.414214];") != std::string::npos);
  CHECK(dot.find("0 -- 2") == std::string::npos);
  const auto csv = graph_edge_csv(g);
  CHECK(csv.rfind("u,v,dist\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("paths and polylines") {
  auto sq = share(gen_circle(1.0, 4));
  ThetaPath p(sq, 1.5, {0, 1, 2, 3, 0});
  CHECK(path_from_json(path_json(p), sq) == p);
  auto other = share(gen_circle(1.0, 5));
  CHECK_THROWS_AS(path_from_json(path_json(p), other), ValidationError);
  CHECK_THROWS_AS(path_from_json(Json{{"points", {0, 1}}}, sq), ValidationError);

  PolylinePath closed{{{0, 0}, {1, 0.5}, {0, 1}, {0, 0}}, true};
  auto back = parse_polyline_csv(polyline_csv(closed));
  CHECK(back.closed);
  CHECK(back.vertices == closed.vertices);
  auto open = parse_polyline_csv("x1,x2\n0,0\n2,0\n");
  CHECK(!open.closed);
  CHECK(open.length() == 2.0);
}

TEST_CASE("certificates") {
  GridHomotopy h{1.5, {{0, 1, 2, 3, 0}, {0, 1, 1, 0, 0}, {0, 0, 0, 0, 0}}, true};
  auto back = certificate_from_json(certificate_json(h));
  CHECK(back.theta == h.theta);
  CHECK(back.rows == h.rows);
  CHECK(back.endpoints_fixed);
  CHECK_THROWS_AS(certificate_from_json(Json{{"rows", 3}}), ValidationError);

  auto sq = share(gen_circle(1.0, 4));
  GridHomotopy jump{1.5, {{0, 1, 2, 3, 0}, {0, 0, 0, 0, 0}}, true};
  auto r = certificate_report_json(verify_grid_homotopy(jump, ThetaPath(sq, 1.5, {0, 1, 2, 3, 0}),
                                                        ThetaPath::constant(sq, 1.5, 0)));
  CHECK(r.at("ok") == false);
  CHECK(r.at("column") == 2);
  CHECK(r.contains("row"));
  CHECK(r.at("distance").get<double>() == doctest::Approx(2.0));
}

TEST_CASE("algebraic outputs") {
  CHECK(integer_json(mpz_class(-12)) == Json(-12));
  CHECK(integer_json(mpz_class("123456789012345678901234567890")) == Json("123456789012345678901234567890"));

  auto c5 = share(gen_circle(1.0, 5));
  auto p = presentation_at_scale(c5, 1.3, 0);
  auto j = presentation_json(p, abelianization(p));
  CHECK(j.at("abelian").at("rank") == 1);
  CHECK(j.at("generators").size() == 1);
  CHECK(j.at("space_hash") == c5->content_hash());
  CHECK(!j.contains("warnings"));

  std::vector<Bar> bars{{0.5, 1.2, 1}, {0.3, std::nullopt, 2}};
  CHECK(barcode_csv(bars) == "birth,death,multiplicity\n0.5,1.2,1\n0.3,inf,2\n");

  auto t = sweep(c5, critical_sweep_scales(*c5), 0);
  auto tj = tower_json(t);
  CHECK(tj.at("scales").size() == 2);
  CHECK(tj.at("maps").size() == 1);
  auto rj = report_json(inverse_limit_report(t));
  CHECK(rj.at("scales").size() == 2);
  CHECK(rj.contains("stabilization_index"));
}

TEST_CASE("verdicts") {
  Verdict v;
  v.outcome = Outcome::nontrivial;
  v.method = "abelian obstruction";
  v.obstruction = Obstruction{Obstruction::Kind::h1_class, {mpz_class(1)}, {}, "nonzero class in H1"};
  auto j = verdict_json(v);
  CHECK(j.at("outcome") == "nontrivial");
  CHECK(j.at("obstruction").at("kind") == "h1_class");
  CHECK(j.at("obstruction").at("class") == Json::array({1}));
  CHECK(!j.contains("certificate"));
}

}  // TEST_SUITE
