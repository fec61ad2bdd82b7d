#include "thetapi/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "thetapi/error.hpp"

namespace thetapi {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* b = s.data();
  const char* e = b + s.size();
  if (*b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e;
}

std::vector<double> parse_row(const std::string& line, std::size_t line_no) {
  std::vector<double> row;
  for (const auto& cell : split(line, ',')) {
    double v = 0.0;
    require(parse_number(cell, v), "line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
    row.push_back(v);
  }
  return row;
}

bool looks_numeric(const std::string& line) {
  for (const auto& cell : split(line, ',')) {
    double v = 0.0;
    if (!parse_number(cell, v)) return false;
  }
  return true;
}

Json word_json(const Word& w) { return Json(w); }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  ensure(ec == std::errc(), "format_double failed");
  return std::string(buf, p);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), "cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out.good()) {
      std::remove(tmp.c_str());
      fail("write to '" + path + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    fail("cannot move output into place at '" + path + "'");
  }
}

std::string sidecar_path(const std::string& cloud_path) { return cloud_path + ".json"; }

FiniteMetricSpace parse_point_csv(const std::string& text, const std::optional<Json>& sidecar) {
  const auto lines = lines_of(text);
  std::size_t h = 0;
  while (h < lines.size() && lines[h][0] == '#') ++h;
  require(lines.size() >= h + 2, "point cloud needs a header row and at least one point");
  const std::size_t dim = split(lines[h], ',').size();
  std::vector<Point> pts;
  for (std::size_t i = h + 1; i < lines.size(); ++i) {
    if (lines[i][0] == '#') continue;
    auto row = parse_row(lines[i], i + 1);
    require(row.size() == dim, "line " + std::to_string(i + 1) + ": expected " + std::to_string(dim) + " columns");
    pts.push_back(std::move(row));
  }
  Metric metric = Metric::euclidean;
  Vertex basepoint = 0;
  std::size_t block = 2;
  std::map<std::string, std::string> meta;
  if (sidecar) {
    const Json& s = *sidecar;
    require(s.is_object(), "sidecar must be a JSON object");
    if (s.contains("metric")) metric = metric_from_string(s.at("metric").get<std::string>());
    if (s.contains("basepoint")) basepoint = s.at("basepoint").get<Vertex>();
    if (s.contains("block_dim")) block = s.at("block_dim").get<std::size_t>();
    if (s.contains("generator")) meta["generator"] = s.at("generator").get<std::string>();
    if (s.contains("params"))
      for (const auto& [k, v] : s.at("params").items()) meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  FiniteMetricSpace space = FiniteMetricSpace::from_points(std::move(pts), metric, basepoint, block);
  space.metadata = std::move(meta);
  return space;
}

FiniteMetricSpace parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<double>> m;
  std::size_t no = 0;
  for (const auto& line : lines_of(text)) {
    ++no;
    if (line[0] == '#') continue;
    m.push_back(parse_row(line, no));
  }
  return FiniteMetricSpace::from_matrix(std::move(m));
}

FiniteMetricSpace read_space(const std::string& path) {
  const std::string text = read_text(path);
  const auto lines = lines_of(text);
  auto first = std::find_if(lines.begin(), lines.end(), [](const std::string& l) { return l[0] != '#'; });
  require(first != lines.end(), "'" + path + "' is empty");
  if (looks_numeric(*first)) return parse_matrix_csv(text);
  std::optional<Json> sidecar;
  const std::string side = sidecar_path(path);
  if (std::filesystem::exists(side)) {
    try {
      sidecar = Json::parse(read_text(side));
    } catch (const Json::exception& e) {
      fail("sidecar '" + side + "': " + e.what());
    }
  }
  return parse_point_csv(text, sidecar);
}

std::string point_csv(const FiniteMetricSpace& space) {
  require(space.has_coords(), "space has no coordinates; write it as a distance matrix");
  std::ostringstream os;
  for (std::size_t k = 0; k < space.dimension(); ++k) os << (k ? "," : "") << 'x' << (k + 1);
  os << '\n';
  for (Vertex i = 0; i < space.size(); ++i) {
    const auto& p = space.coord(i);
    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << format_double(p[k]);
    os << '\n';
  }
  return os.str();
}

Json space_sidecar(const FiniteMetricSpace& space) {
  Json j;
  j["metric"] = to_string(space.metric());
  j["basepoint"] = space.basepoint();
  if (space.metric() == Metric::product_l1) j["block_dim"] = space.block_dim();
  Json params = Json::object();
  std::string generator = "input";
  for (const auto& [k, v] : space.metadata) {
    if (k == "generator")
      generator = v;
    else
      params[k] = v;
  }
  j["generator"] = generator;
  j["params"] = params;
  j["content_hash"] = space.content_hash();
  return j;
}

std::string matrix_csv(const FiniteMetricSpace& space) {
  std::ostringstream os;
  for (Vertex i = 0; i < space.size(); ++i) {
    for (Vertex j = 0; j < space.size(); ++j) os << (j ? "," : "") << format_double(space.dist(i, j));
    os << '\n';
  }
  return os.str();
}

std::string graph_dot(const ThetaGraph& graph) {
  std::ostringstream os;
  os << "graph theta {\n";
  os << "  // theta = " << format_double(graph.theta()) << ", space " << graph.space()->content_hash() << '\n';
  for (Vertex v = 0; v < graph.vertex_count(); ++v) os << "  " << v << ";\n";
  os << std::fixed << std::setprecision(6);
  for (const auto& [u, v] : graph.edges()) os << "  " << u << " -- " << v << " [len=" << graph.space()->dist(u, v) << "];\n";
  os << "}\n";
  return os.str();
}

std::string graph_edge_csv(const ThetaGraph& graph) {
  std::ostringstream os;
  os << "u,v,dist\n";
  for (const auto& [u, v] : graph.edges()) os << u << ',' << v << ',' << format_double(graph.space()->dist(u, v)) << '\n';
  return os.str();
}

Json path_json(const ThetaPath& path) {
  return Json{{"theta", path.theta()}, {"points", path.points()}, {"space_hash", path.space()->content_hash()}};
}

ThetaPath path_from_json(const Json& j, const SpaceRef& space) {
  try {
    const double theta = j.at("theta").get<double>();
    auto points = j.at("points").get<std::vector<Vertex>>();
    if (j.contains("space_hash"))
      require(j.at("space_hash").get<std::string>() == space->content_hash(),
              "path file was made for a different space (hash mismatch)");
    return ThetaPath(space, theta, std::move(points));
  } catch (const Json::exception& e) {
    fail(std::string("malformed path JSON: ") + e.what());
  }
}

PolylinePath parse_polyline_csv(const std::string& text) {
  const auto lines = lines_of(text);
  PolylinePath poly;
  bool header = false;
  std::size_t no = 0;
  for (const auto& line : lines) {
    ++no;
    if (line[0] == '#') {
      if (trim(line.substr(1)) == "closed") poly.closed = true;
      continue;
    }
    if (!header) {
      header = true;
      if (!looks_numeric(line)) continue;
    }
    poly.vertices.push_back(parse_row(line, no));
  }
  poly.validate();
  return poly;
}

std::string polyline_csv(const PolylinePath& poly) {
  std::ostringstream os;
  if (poly.closed) os << "#closed\n";
  const std::size_t d = poly.vertices.empty() ? 0 : poly.vertices.front().size();
  for (std::size_t k = 0; k < d; ++k) os << (k ? "," : "") << 'x' << (k + 1);
  os << '\n';
  for (const auto& p : poly.vertices) {
    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << format_double(p[k]);
    os << '\n';
  }
  return os.str();
}

Json certificate_json(const GridHomotopy& h) {
  return Json{{"theta", h.theta}, {"rows", h.rows}, {"endpoints_fixed", h.endpoints_fixed}};
}

GridHomotopy certificate_from_json(const Json& j) {
  try {
    GridHomotopy h;
    h.theta = j.at("theta").get<double>();
    h.rows = j.at("rows").get<std::vector<std::vector<Vertex>>>();
    h.endpoints_fixed = j.value("endpoints_fixed", true);
    return h;
  } catch (const Json::exception& e) {
    fail(std::string("malformed certificate JSON: ") + e.what());
  }
}

Json certificate_report_json(const CertificateReport& r) {
  Json j{{"ok", r.ok}, {"message", r.message}};
  if (!r.ok) {
    j["row"] = r.row;
    j["column"] = r.column;
    if (r.distance > 0.0) j["distance"] = r.distance;
  }
  return j;
}

Json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Json vector_json(const std::vector<mpz_class>& v) {
  Json j = Json::array();
  for (const auto& z : v) j.push_back(integer_json(z));
  return j;
}

Json matrix_json(const IntMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols; ++k) row.push_back(integer_json(m(i, k)));
    j.push_back(std::move(row));
  }
  return j;
}

Json invariants_json(const AbelianInvariants& a) {
  return Json{{"rank", a.rank}, {"torsion", a.torsion}, {"group", a.to_string()}};
}

Json presentation_json(const GroupPresentation& p, const AbelianInvariants& a) {
  Json gens = Json::array();
  for (const auto& [u, v] : p.generators) gens.push_back(Json{{"u", u}, {"v", v}});
  Json rels = Json::array();
  for (const Word& r : p.relators) rels.push_back(word_json(r));
  Json j{{"theta", p.theta},        {"generators", gens},           {"relators", rels},
         {"abelian", invariants_json(a)}, {"space_hash", p.space_hash}, {"basepoint", p.basepoint},
         {"tree", p.tree}};
  if (p.generator_count_override) j["generator_count"] = *p.generator_count_override;
  if (!p.warnings.empty()) j["warnings"] = p.warnings;
  if (!p.other_components.empty()) j["other_components"] = p.other_components;
  return j;
}

Json scale_map_json(const ScaleMap& m) {
  Json images = Json::array();
  for (const Word& w : m.images) images.push_back(word_json(w));
  return Json{{"theta_from", m.theta_from}, {"theta_to", m.theta_to},      {"moduli_from", vector_json(m.moduli_from)},
              {"moduli_to", vector_json(m.moduli_to)}, {"matrix", matrix_json(m.matrix)}, {"images", images}};
}

Json tower_json(const ScaleTower& tower) {
  Json scales = Json::array();
  for (std::size_t i = 0; i < tower.size(); ++i) {
    const auto& c = *tower.complexes[i];
    scales.push_back(Json{{"theta", tower.scales[i]},
                          {"abelian", invariants_json(c.abelian().invariants())},
                          {"generators", c.presentation().generators.size()},
                          {"relators", c.presentation().relators.size()},
                          {"moduli", vector_json(c.abelian().moduli())}});
  }
  Json maps = Json::array();
  for (const auto& m : tower.maps) maps.push_back(scale_map_json(m));
  return Json{{"basepoint", tower.basepoint}, {"space_hash", tower.space_hash}, {"scales", scales}, {"maps", maps}};
}

std::string barcode_csv(const std::vector<Bar>& bars) {
  std::ostringstream os;
  os << "birth,death,multiplicity\n";
  for (const Bar& b : bars)
    os << format_double(b.birth) << ',' << (b.death ? format_double(*b.death) : "inf") << ',' << b.multiplicity << '\n';
  return os.str();
}

namespace {

Json witness_json(const ClassWitness& w) {
  return Json{{"class", vector_json(w.coordinates)}, {"word", word_json(w.word)}, {"loop", w.loop}};
}

}  // namespace

Json report_json(const InverseLimitReport& r) {
  Json scales = Json::array();
  for (const auto& s : r.scales) {
    Json cok = Json::array(), ker = Json::array();
    for (const auto& w : s.cokernel) cok.push_back(witness_json(w));
    for (const auto& w : s.kernel) ker.push_back(witness_json(w));
    Json j{{"theta", s.theta},   {"abelian", invariants_json(s.invariants)}, {"image_rank", s.image_rank},
           {"cokernel", cok},    {"kernel", ker}};
    if (s.adjacent_kernel_rank) j["adjacent_kernel_rank"] = *s.adjacent_kernel_rank;
    scales.push_back(std::move(j));
  }
  return Json{{"note", r.note},
              {"scales", scales},
              {"stabilization_index", r.stabilization_index},
              {"stabilization_theta", r.stabilization_theta}};
}

std::string report_text(const InverseLimitReport& r) {
  std::ostringstream os;
  os << "# " << r.note << '\n';
  os << "theta, H1, image rank from smallest scale, cokernel witnesses, kernel witnesses\n";
  for (const auto& s : r.scales)
    os << format_double(s.theta) << "  " << s.invariants.to_string() << "  " << s.image_rank << "  "
       << s.cokernel.size() << "  " << s.kernel.size() << '\n';
  os << "stabilized from index " << r.stabilization_index << " (theta " << format_double(r.stabilization_theta)
     << ")\n";
  return os.str();
}

Json verdict_json(const Verdict& v) {
  Json j{{"outcome", to_string(v.outcome)},
         {"method", v.method},
         {"stats", Json{{"states", v.stats.states},
                        {"max_width", v.stats.max_width},
                        {"budget_exhausted", v.stats.budget_exhausted}}}};
  if (v.certificate) j["certificate"] = certificate_json(*v.certificate);
  if (v.obstruction) {
    const auto& o = *v.obstruction;
    Json oj{{"kind", o.kind == Obstruction::Kind::h1_class ? "h1_class" : "free_word"}, {"description", o.description}};
    if (o.kind == Obstruction::Kind::h1_class)
      oj["class"] = vector_json(o.h1_class);
    else
      oj["word"] = word_json(o.word);
    j["obstruction"] = oj;
  }
  return j;
}

}  // namespace thetapi
