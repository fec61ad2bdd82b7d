#include "thetapi/paths.hpp"

#include <algorithm>
#include <sstream>

#include "thetapi/error.hpp"

namespace thetapi {

ThetaPath::ThetaPath(SpaceRef space, double theta, std::vector<Vertex> points)
    : space_(std::move(space)), theta_(theta), points_(std::move(points)) {
  require(space_ != nullptr, "theta-path needs a space");
  require(!points_.empty(), "theta-path must have at least one point");
  for (Vertex v : points_)
    require(v < space_->size(), "theta-path point " + std::to_string(v) + " out of range");
}

ThetaPath ThetaPath::checked(SpaceRef space, double theta, std::vector<Vertex> points) {
  ThetaPath p(std::move(space), theta, std::move(points));
  if (auto bad = validate(p)) {
    std::ostringstream os;
    os << "not a theta-path: step " << bad->index << " has length " << bad->distance << " > theta = " << theta;
    fail(os.str());
  }
  return p;
}

ThetaPath ThetaPath::constant(SpaceRef space, double theta, Vertex point) {
  return ThetaPath(std::move(space), theta, {point});
}

std::optional<StepViolation> validate(const ThetaPath& path) {
  const auto& z = path.points();
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double d = path.space()->dist(z[i], z[i + 1]);
    if (d > path.theta()) return StepViolation{i, d};
  }
  return std::nullopt;
}

ThetaPath lazify(const ThetaPath& path, const std::vector<std::size_t>& schedule) {
  const std::size_t n = path.size() - 1;
  require(!schedule.empty() && schedule.front() == 0 && schedule.back() == n,
          "lazify: schedule must start at 0 and end at the last index");
  std::vector<Vertex> out;
  out.reserve(schedule.size());
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    if (j) {
      require(schedule[j] >= schedule[j - 1] && schedule[j] - schedule[j - 1] <= 1,
              "lazify: schedule must be monotone and surjective");
    }
    out.push_back(path.points()[schedule[j]]);
  }
  return ThetaPath(path.space(), path.theta(), std::move(out));
}

ThetaPath pad_to_length(const ThetaPath& path, std::size_t length) {
  require(length >= path.size(), "pad_to_length: target shorter than path");
  std::vector<Vertex> out = path.points();
  out.resize(length, path.back());
  return ThetaPath(path.space(), path.theta(), std::move(out));
}

std::vector<Vertex> delazify(const std::vector<Vertex>& points) {
  std::vector<Vertex> out;
  out.reserve(points.size());
  for (Vertex v : points)
    if (out.empty() || out.back() != v) out.push_back(v);
  return out;
}

ThetaPath delazify(const ThetaPath& path) {
  return ThetaPath(path.space(), path.theta(), delazify(path.points()));
}

ThetaPath concat(const ThetaPath& p, const ThetaPath& q) {
  require(p.space() == q.space(), "concat: paths live in different spaces");
  require(p.theta() == q.theta(), "concat: paths have different scales");
  require(p.back() == q.front(), "concat: end of first path differs from start of second");
  std::vector<Vertex> out = p.points();
  out.insert(out.end(), q.points().begin() + 1, q.points().end());
  return ThetaPath(p.space(), p.theta(), std::move(out));
}

ThetaPath invert(const ThetaPath& p) {
  return ThetaPath(p.space(), p.theta(), std::vector<Vertex>(p.points().rbegin(), p.points().rend()));
}

namespace {

CertificateReport reject(std::string message, std::size_t row = 0, std::size_t column = 0, double distance = 0.0) {
  return CertificateReport{false, std::move(message), row, column, distance};
}

}  // namespace

CertificateReport verify_grid_homotopy(const GridHomotopy& h, const ThetaPath& from, const ThetaPath& to) {
  const auto& space = *from.space();
  if (from.space() != to.space() && from.space()->content_hash() != to.space()->content_hash())
    return reject("endpoint paths live in different spaces");
  if (h.rows.empty()) return reject("certificate has no rows");
  const std::size_t m = h.rows.front().size();
  if (m == 0) return reject("certificate rows are empty");
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    if (h.rows[i].size() != m) return reject("row " + std::to_string(i) + " has a different length", i);
    for (std::size_t j = 0; j < m; ++j)
      if (h.rows[i][j] >= space.size()) return reject("point id out of range", i, j);
  }
  for (std::size_t i = 0; i < h.rows.size(); ++i)
    for (std::size_t j = 0; j + 1 < m; ++j) {
      const double d = space.dist(h.rows[i][j], h.rows[i][j + 1]);
      if (d > h.theta) return reject("row step exceeds theta", i, j, d);
    }
  for (std::size_t i = 0; i + 1 < h.rows.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double d = space.dist(h.rows[i][j], h.rows[i + 1][j]);
      if (d > h.theta) return reject("column step exceeds theta", i, j, d);
    }
  if (h.endpoints_fixed) {
    if (from.front() != to.front() || from.back() != to.back())
      return reject("paths have different endpoints");
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
      if (h.rows[i].front() != from.front()) return reject("start point moves", i, 0);
      if (h.rows[i].back() != from.back()) return reject("end point moves", i, m - 1);
    }
  }
  if (delazify(h.rows.front()) != delazify(from.points()))
    return reject("first row is not a lazification of the source path", 0);
  if (delazify(h.rows.back()) != delazify(to.points()))
    return reject("last row is not a lazification of the target path", h.rows.size() - 1);
  return CertificateReport{true, "ok", 0, 0, 0.0};
}

GridHomotopy minimize_certificate(const FiniteMetricSpace& space, GridHomotopy h) {
  auto columns_close = [&](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
      if (space.dist(a[j], b[j]) > h.theta) return false;
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<Vertex>> kept;
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
      if (!kept.empty() && kept.back() == h.rows[i] && i + 1 < h.rows.size()) {
        changed = true;
        continue;
      }
      if (!kept.empty() && i + 1 < h.rows.size() && columns_close(kept.back(), h.rows[i + 1])) {
        changed = true;
        continue;
      }
      kept.push_back(h.rows[i]);
    }
    h.rows = std::move(kept);
  }
  // Trailing columns where every row stays put can go, keeping the end fixed.
  while (!h.rows.empty() && h.rows.front().size() >= 2) {
    const std::size_t m = h.rows.front().size();
    bool all_stay = true;
    for (const auto& r : h.rows) all_stay = all_stay && r[m - 1] == r[m - 2];
    if (!all_stay) break;
    for (auto& r : h.rows) r.pop_back();
  }
  return h;
}

Word walk_to_word(const std::vector<Vertex>& walk, const SpanningData& spanning) {
  Word w;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    const Vertex a = walk[i], b = walk[i + 1];
    if (a == b || spanning.is_tree_edge(a, b)) continue;
    const auto& gens = spanning.generators();
    if (!std::binary_search(gens.begin(), gens.end(), make_edge(a, b)))
      fail("step " + std::to_string(a) + " -> " + std::to_string(b) + " is not an edge of the scale graph");
    w.push_back(spanning.letter(a, b));
  }
  return free_reduce(w);
}

Word loop_to_word(const ThetaPath& path, const SpanningData& spanning) {
  require(path.closed(), "loop_to_word: path is not closed");
  require(path.front() == spanning.root(), "loop_to_word: loop is not based at the spanning root");
  for (Vertex v : path.points()) require(spanning.in_component(v), "loop_to_word: loop leaves the basepoint component");
  return walk_to_word(path.points(), spanning);
}

}  // namespace thetapi
