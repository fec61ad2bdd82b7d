#include <algorithm>
#include <cmath>
#include <set>

#include "thetapi/error.hpp"
#include "thetapi/paths.hpp"

namespace thetapi {

namespace {

std::vector<double> cumulative_lengths(const PolylinePath& poly) {
  std::vector<double> cum{0.0};
  for (std::size_t i = 1; i < poly.vertices.size(); ++i)
    cum.push_back(cum.back() + point_distance(poly.vertices[i - 1], poly.vertices[i], Metric::euclidean));
  return cum;
}

Point interpolate(const PolylinePath& poly, const std::vector<double>& cum, double s) {
  if (s <= 0.0) return poly.vertices.front();
  if (s >= cum.back()) return poly.vertices.back();
  const auto it = std::upper_bound(cum.begin(), cum.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - cum.begin()) - 1;
  if (cum[i] == s) return poly.vertices[i];
  const double t = (s - cum[i]) / (cum[i + 1] - cum[i]);
  const Point& a = poly.vertices[i];
  const Point& b = poly.vertices[i + 1];
  Point p(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) p[k] = a[k] + t * (b[k] - a[k]);
  return p;
}

// Cloud of the discretised points; a closed path's last point is point 0.
std::pair<SpaceRef, std::vector<Vertex>> cloud_of(const std::vector<Point>& points, bool closed) {
  std::vector<Point> cloud = points;
  std::vector<Vertex> ids(points.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  if (closed && points.size() >= 2) {
    cloud.pop_back();
    ids.back() = 0;
  }
  return {share(FiniteMetricSpace::from_points(std::move(cloud), Metric::euclidean, 0)), std::move(ids)};
}

}  // namespace

Point point_at(const PolylinePath& poly, double arc_length) {
  poly.validate();
  return interpolate(poly, cumulative_lengths(poly), arc_length);
}

Discretisation discretize(const PolylinePath& poly, double theta, const DiscretizeOptions& options) {
  poly.validate();
  require(theta > 0.0 && std::isfinite(theta), "discretize: theta must be positive");
  require(options.step_fraction > 0.0 && options.step_fraction <= 1.0, "discretize: step_fraction must lie in (0, 1]");
  const auto cum = cumulative_lengths(poly);
  const double total = cum.back();

  std::set<double> anchors{0.0, total};
  if (options.keep_vertices) anchors.insert(cum.begin(), cum.end());
  for (double s : options.extra_breakpoints) {
    require(s >= 0.0 && s <= total, "discretize: extra breakpoint outside [0, length]");
    anchors.insert(s);
  }

  const double step = options.step_fraction * theta;
  Discretisation d;
  d.theta = theta;
  d.closed = poly.closed;
  const std::vector<double> a(anchors.begin(), anchors.end());
  d.breakpoints.push_back(a.front());
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const double gap = a[i + 1] - a[i];
    auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(gap / step)));
    std::vector<double> cut;
    // Rounding can push a chord of length exactly theta past theta; refine then.
    for (;;) {
      cut.clear();
      for (std::size_t k = 1; k < pieces; ++k)
        cut.push_back(a[i] + gap * static_cast<double>(k) / static_cast<double>(pieces));
      cut.push_back(a[i + 1]);
      // distance from the piece's start peaks at a polyline vertex or at its end
      bool ok = true;
      double from = a[i];
      for (double s : cut) {
        const Point start = interpolate(poly, cum, from);
        if (point_distance(start, interpolate(poly, cum, s), Metric::euclidean) > theta) ok = false;
        for (std::size_t k = 0; k < cum.size() && ok; ++k)
          if (cum[k] > from && cum[k] < s && point_distance(start, poly.vertices[k], Metric::euclidean) > theta) ok = false;
        from = s;
      }
      if (ok) break;
      ++pieces;
    }
    d.breakpoints.insert(d.breakpoints.end(), cut.begin(), cut.end());
  }
  for (double s : d.breakpoints) d.points.push_back(interpolate(poly, cum, s));
  return d;
}

ThetaPath as_theta_path(const Discretisation& d) {
  auto [space, ids] = cloud_of(d.points, d.closed);
  return ThetaPath(space, d.theta, std::move(ids));
}

SnappedPath discretize_onto(const PolylinePath& poly, double theta, const SpaceRef& cloud, double max_snap,
                            const DiscretizeOptions& options) {
  require(cloud != nullptr && cloud->has_coords(), "discretize_onto: cloud needs coordinates");
  require(cloud->metric() == Metric::euclidean, "discretize_onto: cloud must use the euclidean metric");
  require(poly.vertices.front().size() == cloud->dimension(), "discretize_onto: dimension mismatch");
  const Discretisation d = discretize(poly, theta, options);
  std::vector<Vertex> ids;
  double snap = 0.0;
  for (const Point& p : d.points) {
    Vertex best = 0;
    double best_d = INFINITY;
    for (Vertex i = 0; i < cloud->size(); ++i) {
      const double dist = point_distance(p, cloud->coord(i), Metric::euclidean);
      if (dist < best_d) {
        best_d = dist;
        best = i;
      }
    }
    require(best_d <= max_snap, "discretize_onto: a path point is farther than max_snap from the cloud");
    snap = std::max(snap, best_d);
    ids.push_back(best);
  }
  const double effective = theta + 2.0 * snap;
  return SnappedPath{ThetaPath::checked(cloud, effective, std::move(ids)), snap, effective};
}

RefinementCertificate refinement_certificate(const PolylinePath& poly, const Discretisation& a,
                                             const Discretisation& b) {
  poly.validate();
  require(a.closed == poly.closed && b.closed == poly.closed, "refinement_certificate: closedness mismatch");
  require(!a.breakpoints.empty() && !b.breakpoints.empty(), "refinement_certificate: empty discretisation");
  require(a.breakpoints.back() == b.breakpoints.back(), "refinement_certificate: discretisations of different lengths");

  std::set<double> merged_set(a.breakpoints.begin(), a.breakpoints.end());
  merged_set.insert(b.breakpoints.begin(), b.breakpoints.end());
  const std::vector<double> merged(merged_set.begin(), merged_set.end());
  const auto cum = cumulative_lengths(poly);
  std::vector<Point> pts;
  for (double s : merged) pts.push_back(interpolate(poly, cum, s));
  auto [space, ids] = cloud_of(pts, poly.closed);

  auto index_of = [&](double s) {
    return ids[static_cast<std::size_t>(std::lower_bound(merged.begin(), merged.end(), s) - merged.begin())];
  };
  // Row that sits at the last breakpoint of `d` at or before each merged position.
  auto lazy_row = [&](const Discretisation& d) {
    std::vector<Vertex> row;
    std::size_t k = 0;
    for (double s : merged) {
      while (k + 1 < d.breakpoints.size() && d.breakpoints[k + 1] <= s) ++k;
      row.push_back(index_of(d.breakpoints[k]));
    }
    return row;
  };
  auto own_path = [&](const Discretisation& d) {
    std::vector<Vertex> p;
    for (double s : d.breakpoints) p.push_back(index_of(s));
    return p;
  };

  const double theta = std::max(a.theta, b.theta);
  RefinementCertificate out{space, ThetaPath(space, a.theta, own_path(a)), ThetaPath(space, b.theta, own_path(b)),
                            GridHomotopy{theta, {lazy_row(a), ids, lazy_row(b)}, true}};
  return out;
}

}  // namespace thetapi
