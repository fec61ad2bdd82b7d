// thetapi: command-line frontend.
//
// Exit codes: 0 success, 2 invalid input, 3 homotopy undecided within budget,
// 4 internal error. Failures print a JSON error object on stderr and remove
// every output file written so far.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "thetapi/decider.hpp"
#include "thetapi/error.hpp"
#include "thetapi/io.hpp"
#include "thetapi/oracle.hpp"
#include "thetapi/paths.hpp"
#include "thetapi/presentation.hpp"
#include "thetapi/scale_maps.hpp"
#include "thetapi/spaces.hpp"

using namespace thetapi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitUnknown = 3;
constexpr int kExitInternal = 4;

// Points above which `oracle` refuses to run; the naive complex enumerates 4-subsets.
constexpr std::size_t kOracleMaxPoints = 16;

struct Globals {
  unsigned threads = 0;
  bool verbose = false;
  std::optional<Vertex> basepoint;
  std::string command;
};

Globals g;
std::vector<std::string> g_written;

void log(const std::string& msg) {
  if (g.verbose) std::cerr << "thetapi: " << msg << '\n';
}

void emit(const std::string& path, const std::string& content) {
  write_text(path, content);
  g_written.push_back(path);
  log("wrote " + path);
}

void emit_json(const std::optional<std::string>& path, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path)
    emit(*path, text);
  else
    std::cout << text;
}

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("THETAPI_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    fail("THETAPI_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SpaceRef load_space(const std::string& path) {
  FiniteMetricSpace s = read_space(path);
  if (g.basepoint) {
    require(*g.basepoint < s.size(), "--basepoint " + std::to_string(*g.basepoint) + " is out of range");
    s = s.with_basepoint(*g.basepoint);
  }
  log(path + ": " + std::to_string(s.size()) + " points, hash " + s.content_hash());
  return share(std::move(s));
}

Json provenance(const Json& params, const std::vector<std::pair<std::string, std::string>>& inputs) {
  Json in = Json::array();
  for (const auto& [path, hash] : inputs) in.push_back(Json{{"path", path}, {"content_hash", hash}});
  Json p = params;
  if (g.basepoint) p["basepoint"] = *g.basepoint;
  return Json{{"tool", "thetapi"}, {"command", g.command}, {"inputs", in}, {"params", p}};
}

// Warns when the scale is close to the sampling resolution recorded by the generator.
void check_resolution(const FiniteMetricSpace& s, double theta) {
  for (const char* key : {"spacing", "resolution"}) {
    auto it = s.metadata.find(key);
    if (it == s.metadata.end()) continue;
    const double spacing = std::stod(it->second);
    if (theta < 3 * spacing)
      std::cerr << "thetapi: warning: theta " << format_double(theta) << " is below 3 x sample " << key << " "
                << it->second << "; results reflect the sample, not the underlying space\n";
    return;
  }
}

std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(part, &used);
      require(used == part.size() && v > 0, "");
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      fail("expected a comma-separated list of positive integers, got '" + text + "'");
    }
  }
  return out;
}

std::vector<double> parse_scales(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(part, &used);
      require(used == part.size(), "");
      out.push_back(v);
    } catch (const std::exception&) {
      fail("--scales: expected 'critical' or a comma-separated list of numbers, got '" + text + "'");
    }
  }
  require(!out.empty(), "--scales: empty list");
  return out;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string name;
  std::string out;
  double radius = 1.0;
  std::size_t count = 8;
  std::size_t circles = 3;
  std::string samples;
  std::size_t stages = 3;
  std::size_t ring_samples = 24;
  bool no_spokes = false;
  bool no_caps = false;
  std::size_t factors = 3;
  std::size_t cap = kDefaultPointCap;
  std::size_t depth = 2;
  double spacing = kDefaultSpacing;
  std::string variant = "flat";
  double r_in = 0.5;
  double r_out = 1.0;
  std::size_t levels = 3;
};

int run_gen(const GenArgs& a) {
  FiniteMetricSpace s = [&] {
    if (a.name == "circle") return gen_circle(a.radius, a.count);
    if (a.name == "earring") {
      auto samples = parse_counts(a.samples);
      if (samples.empty()) samples = earring_default_samples(a.circles, a.spacing);
      return gen_hawaiian_earring(a.circles, samples);
    }
    if (a.name == "telescope") {
      TelescopeOptions o;
      o.n_stages = a.stages;
      o.samples_per_ring = a.ring_samples;
      o.spokes = !a.no_spokes;
      o.caps = !a.no_caps;
      return gen_telescope(o);
    }
    if (a.name == "circle-product") return gen_circle_product(a.factors, parse_counts(a.samples), a.cap);
    if (a.name == "window") return gen_hawaiian_window(a.depth, a.spacing);
    if (a.name == "sine") {
      require(a.variant == "flat" || a.variant == "three-squares", "--variant must be flat or three-squares");
      return gen_sine_space(a.variant == "flat" ? SineVariant::flat : SineVariant::three_squares, a.spacing);
    }
    if (a.name == "annulus") return gen_annulus(a.r_in, a.r_out, a.spacing);
    if (a.name == "circle-tree") return gen_circle_tree(a.levels, a.spacing);
    fail("unknown generator '" + a.name + "'");
  }();
  if (g.basepoint) {
    require(*g.basepoint < s.size(), "--basepoint is out of range");
    s = s.with_basepoint(*g.basepoint);
  }
  emit(a.out, point_csv(s));
  emit(sidecar_path(a.out), space_sidecar(s).dump(2) + "\n");
  std::cout << a.out << ": " << s.size() << " points, hash " << s.content_hash() << '\n';
  return kExitOk;
}

struct GraphArgs {
  std::string cloud;
  double theta = 0;
  std::optional<std::string> out;
  std::string format = "dot";
};

int run_graph(const GraphArgs& a) {
  auto s = load_space(a.cloud);
  check_resolution(*s, a.theta);
  const auto graph = ThetaGraph::build(s, a.theta);
  log(std::to_string(graph.edges().size()) + " edges");
  std::string text;
  if (a.format == "dot") {
    text = graph_dot(graph);
  } else if (a.format == "csv") {
    text = graph_edge_csv(graph);
  } else {
    Json edges = Json::array();
    for (const auto& [u, v] : graph.edges()) edges.push_back(Json{{"u", u}, {"v", v}, {"dist", s->dist(u, v)}});
    Json j{{"theta", a.theta}, {"vertices", s->size()}, {"edges", edges},
           {"provenance", provenance({{"theta", a.theta}}, {{a.cloud, s->content_hash()}})}};
    text = j.dump(2) + "\n";
  }
  if (a.out)
    emit(*a.out, text);
  else
    std::cout << text;
  return kExitOk;
}

struct Pi1Args {
  std::string cloud;
  double theta = 0;
  std::optional<std::string> out;
  bool collapse = false;
  bool chordless = false;
  bool simplify = false;
};

int run_pi1(const Pi1Args& a) {
  auto s = load_space(a.cloud);
  check_resolution(*s, a.theta);
  const PresentationOptions opts{a.collapse, a.chordless};
  GroupPresentation p = presentation_at_scale(s, a.theta, s->basepoint(), opts);
  const AbelianInvariants ab = abelianization(p);
  for (const auto& w : p.warnings) std::cerr << "thetapi: warning: " << w << '\n';
  Json j = presentation_json(p, ab);
  if (a.simplify) {
    const auto t = tietze_simplify(p);
    Json rels = Json::array();
    for (const auto& r : t.presentation.relators) rels.push_back(Json(r));
    j["simplified"] = Json{{"generators", t.presentation.generator_count()}, {"relators", rels}};
  }
  j["provenance"] = provenance({{"theta", a.theta}, {"collapse_dominated", a.collapse}, {"chordless_squares_only", a.chordless},
                                {"simplify", a.simplify}},
                               {{a.cloud, s->content_hash()}});
  if (a.out) {
    emit_json(a.out, j);
    std::cout << "theta " << format_double(a.theta) << ": " << p.generators.size() << " generators, "
              << p.relators.size() << " relators, H1 = " << ab.to_string() << '\n';
  } else {
    emit_json(std::nullopt, j);
  }
  return kExitOk;
}

struct SweepArgs {
  std::string cloud;
  std::string scales = "critical";
  std::optional<std::string> out;
  std::optional<std::string> barcode;
  std::optional<std::string> report;
  std::string report_format = "json";
};

int run_sweep(const SweepArgs& a) {
  auto s = load_space(a.cloud);
  const std::vector<double> grid = a.scales == "critical" ? critical_sweep_scales(*s) : parse_scales(a.scales);
  log("sweeping " + std::to_string(grid.size()) + " scales on " + std::to_string(g.threads) + " threads");
  SweepOptions opts;
  opts.threads = g.threads;
  const ScaleTower tower = sweep(s, grid, s->basepoint(), opts);
  check_resolution(*s, tower.scales.back());
  const auto bars = barcode(tower);
  const Json prov = provenance({{"scales", a.scales}}, {{a.cloud, s->content_hash()}});

  Json tj = tower_json(tower);
  tj["provenance"] = prov;
  Json bj = Json::array();
  for (const auto& b : bars) {
    Json e{{"birth", b.birth}, {"multiplicity", b.multiplicity}};
    e["death"] = b.death ? Json(*b.death) : Json(nullptr);
    bj.push_back(e);
  }
  tj["barcode"] = bj;
  if (a.barcode) emit(*a.barcode, barcode_csv(bars));
  if (a.report) {
    const auto r = inverse_limit_report(tower);
    if (a.report_format == "text") {
      emit(*a.report, report_text(r));
    } else {
      Json rj = report_json(r);
      rj["provenance"] = prov;
      emit(*a.report, rj.dump(2) + "\n");
    }
  }
  if (a.out) {
    emit_json(a.out, tj);
    std::cout << tower.size() << " scales, " << bars.size() << " bars\n";
  } else {
    emit_json(std::nullopt, tj);
  }
  return kExitOk;
}

struct HomotopyArgs {
  std::string cloud;
  std::string first;
  std::optional<std::string> second;
  std::optional<double> theta;
  std::size_t budget = Budget{}.max_states;
  std::size_t width = 0;
  std::optional<std::string> out;
  std::optional<std::string> certificate;
  bool search_only = false;
};

ThetaPath read_path(const std::string& file, const SpaceRef& s, std::optional<double> theta) {
  const ThetaPath p = path_from_json(Json::parse(read_text(file)), s);
  return theta ? p.at_scale(*theta) : p;
}

int run_homotopy(const HomotopyArgs& a) {
  auto s = load_space(a.cloud);
  const ThetaPath p = read_path(a.first, s, a.theta);
  check_resolution(*s, p.theta());
  Budget budget;
  budget.max_states = a.budget;
  budget.max_width = a.width;
  DeciderOptions opts;
  opts.use_presentation = !a.search_only;

  std::optional<ThetaPath> q;
  Verdict v;
  if (a.second) {
    q = read_path(*a.second, s, a.theta);
    v = are_homotopic(p, *q, budget, opts);
  } else {
    v = decide_loop(p, budget, opts);
  }
  const ThetaPath target = q ? *q : ThetaPath::constant(s, p.theta(), p.front());
  if (v.certificate) ensure(verify_grid_homotopy(*v.certificate, p, target).ok, "decider produced a certificate that does not verify");
  if (v.obstruction && !q) ensure(check_obstruction(*v.obstruction, p, opts), "decider produced an obstruction that does not recompute");

  std::vector<std::pair<std::string, std::string>> inputs{{a.cloud, s->content_hash()}, {a.first, s->content_hash()}};
  if (a.second) inputs.emplace_back(*a.second, s->content_hash());
  const Json prov = provenance({{"theta", p.theta()}, {"budget", a.budget}, {"max_width", a.width}, {"search_only", a.search_only}}, inputs);
  Json j = verdict_json(v);
  j["provenance"] = prov;
  if (a.certificate && v.certificate) {
    Json c = certificate_json(*v.certificate);
    c["from"] = p.points();
    c["to"] = target.points();
    c["space_hash"] = s->content_hash();
    c["provenance"] = prov;
    emit(*a.certificate, c.dump(2) + "\n");
  }
  emit_json(a.out, j);
  if (a.out) std::cout << to_string(v.outcome) << " (" << v.method << ")\n";
  return v.outcome == Outcome::unknown ? kExitUnknown : kExitOk;
}

struct DiscretizeArgs {
  std::string polyline;
  double theta = 0;
  double step_fraction = 1.0;
  std::optional<std::string> onto;
  double max_snap = 0;
  std::string out;
  std::optional<std::string> cloud_out;
};

int run_discretize(const DiscretizeArgs& a) {
  const PolylinePath poly = parse_polyline_csv(read_text(a.polyline));
  DiscretizeOptions opts;
  opts.step_fraction = a.step_fraction;
  Json params{{"theta", a.theta}, {"step_fraction", a.step_fraction}};
  Json j;
  if (a.onto) {
    require(a.max_snap > 0, "--max-snap must be positive with --onto");
    auto cloud = load_space(*a.onto);
    const SnappedPath sp = discretize_onto(poly, a.theta, cloud, a.max_snap, opts);
    params["max_snap"] = a.max_snap;
    j = path_json(sp.path);
    j["snap_radius"] = sp.snap_radius;
    j["effective_theta"] = sp.effective_theta;
    j["provenance"] = provenance(params, {{a.polyline, ""}, {*a.onto, cloud->content_hash()}});
    j["provenance"]["inputs"][0].erase("content_hash");
  } else {
    require(a.cloud_out.has_value(), "--cloud-out is required without --onto (the path lives on its own points)");
    const Discretisation d = discretize(poly, a.theta, opts);
    const ThetaPath path = as_theta_path(d);
    emit(*a.cloud_out, point_csv(*path.space()));
    emit(sidecar_path(*a.cloud_out), space_sidecar(*path.space()).dump(2) + "\n");
    j = path_json(path);
    j["breakpoints"] = d.breakpoints;
    j["provenance"] = provenance(params, {{a.polyline, ""}});
    j["provenance"]["inputs"][0].erase("content_hash");
  }
  emit(a.out, j.dump(2) + "\n");
  std::cout << a.out << ": " << j.at("points").size() << " points\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string certificate;
  std::string space;
  std::optional<std::string> from;
  std::optional<std::string> to;
  std::optional<std::string> out;
};

int run_verify(const VerifyArgs& a) {
  auto s = load_space(a.space);
  const Json cj = Json::parse(read_text(a.certificate));
  if (cj.contains("space_hash"))
    require(cj.at("space_hash").get<std::string>() == s->content_hash(), "certificate was made for a different space (hash mismatch)");
  const GridHomotopy h = certificate_from_json(cj);
  require(!h.rows.empty(), "certificate has no rows");
  auto endpoint = [&](const std::optional<std::string>& file, const char* key, const std::vector<Vertex>& fallback) {
    if (file) return read_path(*file, s, h.theta);
    if (cj.contains(key)) return ThetaPath(s, h.theta, cj.at(key).get<std::vector<Vertex>>());
    return ThetaPath(s, h.theta, delazify(fallback));
  };
  const ThetaPath from = endpoint(a.from, "from", h.rows.front());
  const ThetaPath to = endpoint(a.to, "to", h.rows.back());
  const CertificateReport r = verify_grid_homotopy(h, from, to);
  Json j = certificate_report_json(r);
  j["provenance"] = provenance({{"theta", h.theta}}, {{a.space, s->content_hash()}, {a.certificate, ""}});
  j["provenance"]["inputs"][1].erase("content_hash");
  emit_json(a.out, j);
  if (a.out) std::cout << (r.ok ? "valid" : "invalid: " + r.message) << '\n';
  return r.ok ? kExitOk : kExitValidation;
}

struct OracleArgs {
  std::string cloud;
  std::optional<double> theta;
  std::optional<std::string> out;
};

// Recomputes H1 with the naive boundary-matrix method and compares.
int run_oracle(const OracleArgs& a) {
  auto s = load_space(a.cloud);
  require(s->size() <= kOracleMaxPoints,
          "oracle is for tiny spaces (at most " + std::to_string(kOracleMaxPoints) + " points)");
  const std::vector<double> scales = a.theta ? std::vector<double>{*a.theta} : critical_scales(*s);
  Json rows = Json::array();
  bool all = true;
  for (double t : scales) {
    const auto pipeline = abelianization(presentation_at_scale(s, t, s->basepoint()));
    const auto naive = oracle::naive_h1(*s, t, s->basepoint());
    const bool same = pipeline == naive;
    all = all && same;
    rows.push_back(Json{{"theta", t}, {"pipeline", invariants_json(pipeline)}, {"naive", invariants_json(naive)}, {"agree", same}});
  }
  Json j{{"agree", all}, {"scales", rows}, {"provenance", provenance({{"theta", a.theta ? Json(*a.theta) : Json("critical")}}, {{a.cloud, s->content_hash()}})}};
  emit_json(a.out, j);
  if (a.out) std::cout << (all ? "agree" : "DISAGREE") << " at " << scales.size() << " scales\n";
  return all ? kExitOk : kExitInternal;
}

void remove_outputs() {
  for (const auto& p : g_written) {
    std::error_code ec;
    std::filesystem::remove(p, ec);
  }
  g_written.clear();
}

int report_error(const char* kind, const std::string& message, int code) {
  remove_outputs();
  std::cerr << Json{{"error", Json{{"kind", kind}, {"command", g.command}, {"message", message}, {"exit_code", code}}}}.dump()
            << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete fundamental groups of finite metric spaces across scales"};
  app.require_subcommand(1);
  unsigned threads = 0;
  Vertex basepoint = 0;
  app.add_option("--threads", threads, "Worker threads (default: THETAPI_THREADS or all cores)");
  app.add_flag("-v,--verbose", g.verbose, "Diagnostics on stderr");
  auto* bp = app.add_option("--basepoint", basepoint, "Override the basepoint id");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated point cloud (CSV plus JSON sidecar)");
  gen_cmd->add_option("name", gen.name, "circle, earring, telescope, circle-product, window, sine, annulus, circle-tree")->required();
  gen_cmd->add_option("-o,--output", gen.out, "Output CSV")->required();
  gen_cmd->add_option("--radius", gen.radius, "circle radius");
  gen_cmd->add_option("--count", gen.count, "circle sample count");
  gen_cmd->add_option("--circles", gen.circles, "earring circles");
  gen_cmd->add_option("--samples", gen.samples, "per-circle / per-factor sample counts, comma separated");
  gen_cmd->add_option("--stages", gen.stages, "telescope stages");
  gen_cmd->add_option("--ring-samples", gen.ring_samples, "telescope samples per ring");
  gen_cmd->add_flag("--no-spokes", gen.no_spokes, "telescope without spokes");
  gen_cmd->add_flag("--no-caps", gen.no_caps, "telescope without shell caps");
  gen_cmd->add_option("--factors", gen.factors, "circle-product factors");
  gen_cmd->add_option("--cap", gen.cap, "circle-product point cap");
  gen_cmd->add_option("--depth", gen.depth, "window depth");
  gen_cmd->add_option("--spacing", gen.spacing, "sample spacing (earring, window, sine, annulus, circle-tree)");
  gen_cmd->add_option("--variant", gen.variant, "sine variant: flat or three-squares");
  gen_cmd->add_option("--r-in", gen.r_in, "annulus inner radius");
  gen_cmd->add_option("--r-out", gen.r_out, "annulus outer radius");
  gen_cmd->add_option("--levels", gen.levels, "circle-tree levels");

  GraphArgs graph;
  auto* graph_cmd = app.add_subcommand("graph", "Export the theta-graph");
  graph_cmd->add_option("cloud", graph.cloud)->required();
  graph_cmd->add_option("--theta", graph.theta)->required()->check(CLI::PositiveNumber);
  graph_cmd->add_option("-o,--output", graph.out);
  graph_cmd->add_option("--format", graph.format)->check(CLI::IsMember({"dot", "csv", "json"}));

  Pi1Args pi1;
  auto* pi1_cmd = app.add_subcommand("pi1", "Presentation and abelian invariants at one scale");
  pi1_cmd->add_option("cloud", pi1.cloud)->required();
  pi1_cmd->add_option("--theta", pi1.theta)->required()->check(CLI::PositiveNumber);
  pi1_cmd->add_option("-o,--output", pi1.out, "JSON output (default: stdout)");
  pi1_cmd->add_flag("--collapse", pi1.collapse, "Retract dominated vertices first");
  pi1_cmd->add_flag("--chordless", pi1.chordless, "Only chordless 4-cycles as relators");
  pi1_cmd->add_flag("--simplify", pi1.simplify, "Add a Tietze-simplified presentation");
  std::string pi1_format = "json";
  pi1_cmd->add_option("--format", pi1_format)->check(CLI::IsMember({"json"}));

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Scale tower, barcode and inverse-limit report");
  sweep_cmd->add_option("cloud", sw.cloud)->required();
  sweep_cmd->add_option("--scales", sw.scales, "'critical' or a comma-separated list");
  sweep_cmd->add_option("-o,--output", sw.out, "Tower JSON (default: stdout)");
  sweep_cmd->add_option("--barcode", sw.barcode, "Barcode CSV");
  sweep_cmd->add_option("--report", sw.report, "Inverse-limit report");
  sweep_cmd->add_option("--format", sw.report_format, "Report format")->check(CLI::IsMember({"json", "text"}));

  HomotopyArgs hom;
  auto* hom_cmd = app.add_subcommand("homotopy", "Decide whether a loop is null-homotopic, or two paths are homotopic");
  hom_cmd->add_option("cloud", hom.cloud)->required();
  hom_cmd->add_option("path", hom.first)->required();
  hom_cmd->add_option("other", hom.second);
  hom_cmd->add_option("--theta", hom.theta, "Scale (default: the path file's)")->check(CLI::PositiveNumber);
  hom_cmd->add_option("--budget", hom.budget, "Search states");
  hom_cmd->add_option("--max-width", hom.width, "Longest row in the search (0: automatic)");
  hom_cmd->add_option("-o,--output", hom.out, "Verdict JSON (default: stdout)");
  hom_cmd->add_option("--certificate", hom.certificate, "Write the certificate of a Trivial verdict");
  hom_cmd->add_flag("--search-only", hom.search_only, "Skip the presentation-based phases");

  DiscretizeArgs disc;
  auto* disc_cmd = app.add_subcommand("discretize", "Polyline to theta-path");
  disc_cmd->add_option("polyline", disc.polyline)->required();
  disc_cmd->add_option("--theta", disc.theta)->required()->check(CLI::PositiveNumber);
  disc_cmd->add_option("--step-fraction", disc.step_fraction)->check(CLI::Range(0.0, 1.0));
  disc_cmd->add_option("--onto", disc.onto, "Snap onto this cloud");
  disc_cmd->add_option("--max-snap", disc.max_snap, "Largest snap displacement");
  disc_cmd->add_option("-o,--output", disc.out, "Path JSON")->required();
  disc_cmd->add_option("--cloud-out", disc.cloud_out, "Cloud of the path's own points");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Check a grid-homotopy certificate");
  ver_cmd->add_option("certificate", ver.certificate)->required();
  ver_cmd->add_option("--space", ver.space)->required();
  ver_cmd->add_option("--from", ver.from, "Source path JSON (default: certificate's)");
  ver_cmd->add_option("--to", ver.to, "Target path JSON (default: certificate's)");
  ver_cmd->add_option("-o,--output", ver.out);

  OracleArgs orc;
  auto* orc_cmd = app.add_subcommand("oracle", "Cross-check H1 against the naive boundary-matrix computation");
  orc_cmd->add_option("cloud", orc.cloud)->required();
  orc_cmd->add_option("--theta", orc.theta, "One scale (default: every critical scale)")->check(CLI::PositiveNumber);
  orc_cmd->add_option("-o,--output", orc.out);

  for (int i = 1; i < argc && g.command.empty(); ++i)
    for (const auto* sub : app.get_subcommands({}))
      if (sub->get_name() == argv[i]) g.command = argv[i];
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kExitValidation);
  }

  g.command = app.get_subcommands().front()->get_name();
  try {
    if (bp->count()) g.basepoint = basepoint;
    g.threads = resolve_threads(threads);
    if (*gen_cmd) return run_gen(gen);
    if (*graph_cmd) return run_graph(graph);
    if (*pi1_cmd) return run_pi1(pi1);
    if (*sweep_cmd) return run_sweep(sw);
    if (*hom_cmd) return run_homotopy(hom);
    if (*disc_cmd) return run_discretize(disc);
    if (*ver_cmd) return run_verify(ver);
    if (*orc_cmd) return run_oracle(orc);
  } catch (const ValidationError& e) {
    return report_error("validation", e.what(), kExitValidation);
  } catch (const Json::exception& e) {
    return report_error("validation", std::string("malformed JSON: ") + e.what(), kExitValidation);
  } catch (const InternalError& e) {
    return report_error("internal", e.what(), kExitInternal);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), kExitInternal);
  }
  return report_error("internal", "no subcommand ran", kExitInternal);
}
