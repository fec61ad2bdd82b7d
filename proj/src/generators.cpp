// Point-cloud generators for the example spaces. Every generator is a pure
// function of its parameters; point order is part of the contract.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "thetapi/error.hpp"
#include "thetapi/spaces.hpp"

namespace thetapi {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Collects points, merging exact duplicates up to a rounding grid.
class CloudBuilder {
 public:
  explicit CloudBuilder(double merge_tol = 1e-12) : tol_(merge_tol) {}

  Vertex add(const Point& p) {
    std::vector<long long> key;
    key.reserve(p.size());
    for (double c : p) key.push_back(std::llround(c / tol_));
    auto [it, inserted] = index_.emplace(std::move(key), points_.size());
    if (inserted) points_.push_back(p);
    return it->second;
  }

  // Samples the segment [a, b] with pieces no longer than `spacing`.
  void segment(const Point& a, const Point& b, double spacing, bool include_start = true, bool include_end = true) {
    const double len = point_distance(a, b, Metric::euclidean);
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(len / spacing - 1e-9)));
    for (std::size_t k = include_start ? 0 : 1; k <= pieces; ++k) {
      if (k == pieces && !include_end) break;
      const double t = static_cast<double>(k) / static_cast<double>(pieces);
      Point p(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] + t * (b[i] - a[i]);
      add(p);
    }
  }

  std::vector<Point> take() { return std::move(points_); }
  std::size_t size() const { return points_.size(); }

 private:
  double tol_;
  std::map<std::vector<long long>, Vertex> index_;
  std::vector<Point> points_;
};

Vertex find_point(const FiniteMetricSpace& space, const Point& target, const char* what) {
  require(space.has_coords(), std::string(what) + ": space has no coordinates");
  Vertex best = 0;
  double best_d = INFINITY;
  for (Vertex i = 0; i < space.size(); ++i) {
    const double d = point_distance(space.coord(i), target, Metric::euclidean);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  require(best_d < 1e-9, std::string(what) + ": expected sample point not present");
  return best;
}

}  // namespace

FiniteMetricSpace gen_circle(double radius, std::size_t count, const Point& center) {
  require(count >= 1, "gen_circle: count must be >= 1");
  require(radius > 0.0, "gen_circle: radius must be positive");
  require(center.size() == 2, "gen_circle: center must be a 2-vector");
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double a = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count);
    pts.push_back({center[0] + radius * std::cos(a), center[1] + radius * std::sin(a)});
  }
  auto space = FiniteMetricSpace::from_points(std::move(pts));
  space.metadata = {{"generator", "circle"}, {"radius", fmt(radius)}, {"count", std::to_string(count)}};
  return space;
}

std::vector<std::size_t> earring_default_samples(std::size_t n_circles, double spacing) {
  require(spacing > 0.0, "earring: spacing must be positive");
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= n_circles; ++k) {
    const double circumference = 2.0 * kPi / static_cast<double>(k);
    out.push_back(std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(circumference / spacing))));
  }
  return out;
}

FiniteMetricSpace gen_hawaiian_earring(std::size_t n_circles, std::vector<std::size_t> samples) {
  require(n_circles >= 1, "gen_hawaiian_earring: n_circles must be >= 1");
  if (samples.empty()) samples = earring_default_samples(n_circles);
  require(samples.size() == n_circles, "gen_hawaiian_earring: need one sample count per circle");
  for (auto s : samples) require(s >= 3, "gen_hawaiian_earring: every circle needs at least 3 samples");

  std::vector<Point> pts{{0.0, 0.0}};
  for (std::size_t n = 1; n <= n_circles; ++n) {
    const double r = 1.0 / static_cast<double>(n);
    const std::size_t m = samples[n - 1];
    // angle pi about the centre (r, 0) is the origin
    for (std::size_t j = 1; j < m; ++j) {
      const double a = kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m);
      pts.push_back({r + r * std::cos(a), r * std::sin(a)});
    }
  }
  auto space = FiniteMetricSpace::from_points(std::move(pts));
  space.metadata = {{"generator", "hawaiian_earring"},
                    {"n_circles", std::to_string(n_circles)},
                    {"samples", join(samples)},
                    {"truncation_depth", std::to_string(n_circles)}};
  return space;
}

FiniteMetricSpace gen_telescope(std::size_t n_stages, std::size_t samples_per_ring, bool spokes) {
  TelescopeOptions o;
  o.n_stages = n_stages;
  o.samples_per_ring = samples_per_ring;
  o.spokes = spokes;
  return gen_telescope(o);
}

FiniteMetricSpace gen_telescope(const TelescopeOptions& o) {
  require(o.n_stages >= 1, "gen_telescope: n_stages must be >= 1");
  require(o.samples_per_ring >= 8, "gen_telescope: samples_per_ring must be >= 8");
  require(o.samples_per_ring % 8 == 0, "gen_telescope: samples_per_ring must be a multiple of 8");

  const std::size_t s = o.samples_per_ring;
  const double unit_chord = 2.0 * std::sin(kPi / static_cast<double>(s));
  auto ring_point = [&](double x, double rho, std::size_t k) -> Point {
    const double a = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(s);
    return {x, rho * std::cos(a), rho * std::sin(a)};
  };
  auto even_at_least = [](double v) {
    auto n = static_cast<std::size_t>(std::ceil(v - 1e-9));
    if (n < 2) n = 2;
    return n % 2 ? n + 1 : n;
  };

  CloudBuilder cloud;
  for (std::size_t n = 0; n < o.n_stages; ++n) {
    const double radius = std::ldexp(1.0, -static_cast<int>(n));
    const double chord = radius * unit_chord;
    const std::size_t rings = even_at_least(1.0 / chord);
    for (std::size_t j = 0; j <= rings; ++j) {
      if (j == 0 && n > 0 && o.caps) continue;  // lies on the previous stage's end disk
      const double x = static_cast<double>(n) + static_cast<double>(j) / static_cast<double>(rings);
      for (std::size_t k = 0; k < s; ++k) cloud.add(ring_point(x, radius, k));
    }
    const double xm = static_cast<double>(n) + 0.5;
    const std::size_t pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.5 * radius / chord - 1e-9)));
    for (std::size_t k = 0; k < 8; ++k) {
      const std::size_t ring_index = k * s / 8;
      if (o.spokes) {
        for (std::size_t t = 1; t < pieces; ++t) {
          const double rho = radius - 0.5 * radius * static_cast<double>(t) / static_cast<double>(pieces);
          cloud.add(ring_point(xm, rho, ring_index));
        }
      }
      cloud.add(ring_point(xm, 0.5 * radius, ring_index));
    }
  }
  if (o.caps) {
    const std::size_t disks_radial = even_at_least(1.0 / unit_chord);
    for (std::size_t b = 0; b <= o.n_stages; ++b) {
      const std::size_t stage = b == 0 ? 0 : b - 1;
      const double radius = std::ldexp(1.0, -static_cast<int>(stage));
      const double x = static_cast<double>(b);
      cloud.add({x, 0.0, 0.0});
      for (std::size_t i = 1; i < disks_radial; ++i) {
        const double rho = radius * static_cast<double>(i) / static_cast<double>(disks_radial);
        for (std::size_t k = 0; k < s; ++k) cloud.add(ring_point(x, rho, k));
      }
    }
  }
  auto space = FiniteMetricSpace::from_points(cloud.take());
  space.metadata = {{"generator", "telescope"},
                    {"n_stages", std::to_string(o.n_stages)},
                    {"samples_per_ring", std::to_string(o.samples_per_ring)},
                    {"spokes", o.spokes ? "true" : "false"},
                    {"caps", o.caps ? "true" : "false"},
                    {"truncation_depth", std::to_string(o.n_stages)}};
  return space;
}

std::vector<Vertex> telescope_octagon(const FiniteMetricSpace& telescope, std::size_t stage) {
  const double radius = std::ldexp(1.0, -static_cast<int>(stage));
  const double xm = static_cast<double>(stage) + 0.5;
  std::vector<Vertex> out;
  for (std::size_t k = 0; k < 8; ++k) {
    const double a = kPi * static_cast<double>(k) / 4.0;
    out.push_back(find_point(telescope, {xm, 0.5 * radius * std::cos(a), 0.5 * radius * std::sin(a)}, "telescope_octagon"));
  }
  return out;
}

Vertex telescope_stage_anchor(const FiniteMetricSpace& telescope, std::size_t stage) {
  const double radius = std::ldexp(1.0, -static_cast<int>(stage));
  return find_point(telescope, {static_cast<double>(stage), radius, 0.0}, "telescope_stage_anchor");
}

FiniteMetricSpace gen_circle_product(std::size_t n_factors, std::vector<std::size_t> samples, std::size_t cap) {
  require(n_factors >= 1, "gen_circle_product: n_factors must be >= 1");
  if (samples.empty()) samples.assign(n_factors, 8);
  require(samples.size() == n_factors, "gen_circle_product: need one sample count per factor");
  std::size_t total = 1;
  for (auto m : samples) {
    require(m >= 1, "gen_circle_product: sample counts must be positive");
    require(total <= cap / m, "gen_circle_product: point count exceeds cap of " + std::to_string(cap));
    total *= m;
  }
  std::vector<Point> pts;
  pts.reserve(total);
  std::vector<std::size_t> index(n_factors, 0);
  for (std::size_t id = 0; id < total; ++id) {
    std::size_t rest = id;
    Point p(2 * n_factors);
    for (std::size_t n = 0; n < n_factors; ++n) {
      index[n] = rest % samples[n];
      rest /= samples[n];
      const double r = std::ldexp(1.0, -static_cast<int>(n));
      const double a = 2.0 * kPi * static_cast<double>(index[n]) / static_cast<double>(samples[n]);
      p[2 * n] = r * std::cos(a);
      p[2 * n + 1] = r * std::sin(a);
    }
    pts.push_back(std::move(p));
  }
  auto space = FiniteMetricSpace::from_points(std::move(pts), Metric::product_l1, 0, 2);
  space.metadata = {{"generator", "circle_product"},
                    {"n_factors", std::to_string(n_factors)},
                    {"samples", join(samples)},
                    {"truncation_depth", std::to_string(n_factors)}};
  return space;
}

FiniteMetricSpace gen_hawaiian_window(std::size_t depth, double spacing) {
  require(spacing > 0.0, "gen_hawaiian_window: spacing must be positive");
  CloudBuilder cloud;
  const Point c00{-1, -1}, c10{1, -1}, c11{1, 1}, c01{-1, 1};
  // start at (1, 1) so the basepoint is the far-right corner
  cloud.segment(c11, c01, spacing);
  cloud.segment(c01, c00, spacing);
  cloud.segment(c00, c10, spacing);
  cloud.segment(c10, c11, spacing);

  struct Square {
    double x0, y0, side;
  };
  std::vector<Square> leftmost{{-1.0, -1.0, 2.0}};
  for (std::size_t level = 1; level <= depth; ++level) {
    std::vector<Square> next;
    for (const auto& q : leftmost) {
      const double h = q.side / 2.0;
      const Point centre{q.x0 + h, q.y0 + h};
      cloud.segment(centre, {q.x0, q.y0 + h}, spacing);
      cloud.segment(centre, {q.x0 + q.side, q.y0 + h}, spacing);
      cloud.segment(centre, {q.x0 + h, q.y0}, spacing);
      cloud.segment(centre, {q.x0 + h, q.y0 + q.side}, spacing);
      next.push_back({q.x0, q.y0, h});
      next.push_back({q.x0, q.y0 + h, h});
    }
    leftmost = std::move(next);
  }
  auto space = FiniteMetricSpace::from_points(cloud.take());
  space.metadata = {{"generator", "hawaiian_window"},
                    {"depth", std::to_string(depth)},
                    {"spacing", fmt(spacing)},
                    {"truncation_depth", std::to_string(depth)}};
  return space;
}

namespace {

// Arc-length samples of x -> (x, sin(k/x)) on [x_min, 1] with step `spacing`,
// starting at x = 1.
std::vector<Point> sine_graph_samples(double x_min, double spacing, double k) {
  std::vector<Point> out;
  auto at = [k](double x) { return Point{x, std::sin(k / x)}; };
  Point prev = at(1.0);
  out.push_back(prev);
  double acc = 0.0;
  double x = 1.0;
  while (x > x_min) {
    // x-step small against both the spacing and the local wavelength
    const double dx = std::min(spacing, x * x / k) / 16.0;
    x = std::max(x_min, x - dx);
    Point cur = at(x);
    acc += point_distance(prev, cur, Metric::euclidean);
    prev = cur;
    if (acc >= spacing || x == x_min) {
      out.push_back(cur);
      acc = 0.0;
    }
  }
  return out;
}

}  // namespace

FiniteMetricSpace gen_sine_space(SineVariant variant, double resolution) {
  require(resolution > 0.0 && resolution < 1.0, "gen_sine_space: resolution must be in (0, 1)");
  const double x_min = resolution;
  const double spacing = resolution;
  CloudBuilder cloud;
  std::map<std::string, std::string> meta{{"resolution", fmt(resolution)}, {"x_min", fmt(x_min)}};
  if (variant == SineVariant::flat) {
    for (const auto& p : sine_graph_samples(x_min, spacing, 1.0)) cloud.add(p);
    cloud.segment({0.0, -1.0}, {0.0, 1.0}, spacing);
    // connector: (1, sin 1) up to (1, 1), quarter circle about (0, 1) to (0, 2), down to (0, 1)
    cloud.segment({1.0, std::sin(1.0)}, {1.0, 1.0}, spacing);
    const auto arc_pieces = static_cast<std::size_t>(std::ceil((kPi / 2.0) / spacing));
    for (std::size_t t = 0; t <= arc_pieces; ++t) {
      const double a = (kPi / 2.0) * static_cast<double>(t) / static_cast<double>(arc_pieces);
      cloud.add({std::cos(a), 1.0 + std::sin(a)});
    }
    cloud.segment({0.0, 2.0}, {0.0, 1.0}, spacing);
    meta["generator"] = "sine_flat";
    meta["connector"] = "segment (1,sin 1)-(1,1); quarter circle centre (0,1) radius 1 to (0,2); segment (0,2)-(0,1)";
  } else {
    const auto profile = sine_graph_samples(x_min, spacing, kPi);
    const auto ny = static_cast<std::size_t>(std::ceil(2.0 / spacing));
    for (std::size_t j = 0; j <= ny; ++j) {
      const double y = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(ny);
      for (const auto& p : profile) cloud.add({p[0], y, p[1]});
    }
    // limit square A at x = 0 and side squares B1, B2 in the planes y = -1, y = 1
    const auto n0 = static_cast<std::size_t>(std::ceil(1.0 / spacing));
    for (std::size_t a = 0; a <= 2 * n0; ++a) {
      const double u = -1.0 + static_cast<double>(a) / static_cast<double>(n0);
      for (std::size_t b = 0; b <= 2 * n0; ++b) {
        const double w = -1.0 + static_cast<double>(b) / static_cast<double>(n0);
        cloud.add({0.0, u, w});
      }
      for (std::size_t b = 0; b <= n0; ++b) {
        const double x = static_cast<double>(b) / static_cast<double>(n0);
        cloud.add({x, -1.0, u});
        cloud.add({x, 1.0, u});
      }
    }
    meta["generator"] = "sine_three_squares";
    meta["squares"] = "A: x=0; B1: y=-1, x in [0,1]; B2: y=1, x in [0,1]; z in [-1,1]";
  }
  auto space = FiniteMetricSpace::from_points(cloud.take());
  space.metadata = std::move(meta);
  return space;
}

FiniteMetricSpace gen_annulus(double r_in, double r_out, double spacing) {
  require(r_in > 0.0 && r_in < r_out, "gen_annulus: need 0 < r_in < r_out");
  require(spacing > 0.0, "gen_annulus: spacing must be positive");
  const auto gaps = static_cast<std::size_t>(std::max(1.0, std::ceil((r_out - r_in) / spacing - 1e-9)));
  std::vector<Point> pts;
  for (std::size_t i = 0; i <= gaps; ++i) {
    const double rho = r_in + (r_out - r_in) * static_cast<double>(i) / static_cast<double>(gaps);
    const auto m = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(2.0 * kPi * rho / spacing - 1e-9)));
    for (std::size_t k = 0; k < m; ++k) {
      const double a = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
      pts.push_back({rho * std::cos(a), rho * std::sin(a)});
    }
  }
  auto space = FiniteMetricSpace::from_points(std::move(pts));
  space.metadata = {{"generator", "annulus"}, {"r_in", fmt(r_in)}, {"r_out", fmt(r_out)}, {"spacing", fmt(spacing)}};
  return space;
}

std::vector<Vertex> annulus_inner_ring(const FiniteMetricSpace& annulus) {
  require(annulus.has_coords() && annulus.size() > 0, "annulus_inner_ring: need a coordinate space");
  const double r0 = std::hypot(annulus.coord(0)[0], annulus.coord(0)[1]);
  std::vector<Vertex> ring;
  for (Vertex i = 0; i < annulus.size(); ++i) {
    if (std::abs(std::hypot(annulus.coord(i)[0], annulus.coord(i)[1]) - r0) > 1e-9) break;
    ring.push_back(i);
  }
  return ring;
}

FiniteMetricSpace gen_circle_tree(std::size_t n_levels, double spacing) {
  require(n_levels >= 1, "gen_circle_tree: n_levels must be >= 1");
  require(spacing > 0.0, "gen_circle_tree: spacing must be positive");
  auto level_points = [](std::size_t n) {
    std::vector<Point> out;
    const std::size_t count = std::size_t{1} << n;
    for (std::size_t k = 0; k < count; ++k) {
      const double a = 2.0 * kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
      out.push_back({std::cos(a), std::sin(a), static_cast<double>(n)});
    }
    return out;
  };
  CloudBuilder cloud;
  for (std::size_t n = 0; n < n_levels; ++n)
    for (const auto& p : level_points(n)) cloud.add(p);
  for (std::size_t n = 0; n + 1 < n_levels; ++n) {
    const auto upper = level_points(n + 1);
    for (const auto& p : level_points(n)) {
      std::vector<std::pair<double, std::size_t>> by_distance;
      for (std::size_t j = 0; j < upper.size(); ++j)
        by_distance.emplace_back(point_distance(p, upper[j], Metric::euclidean), j);
      std::sort(by_distance.begin(), by_distance.end());
      for (std::size_t t = 0; t < 2 && t < by_distance.size(); ++t)
        cloud.segment(p, upper[by_distance[t].second], spacing, false, false);
    }
  }
  auto space = FiniteMetricSpace::from_points(cloud.take());
  space.metadata = {{"generator", "circle_tree"},
                    {"n_levels", std::to_string(n_levels)},
                    {"spacing", fmt(spacing)},
                    {"truncation_depth", std::to_string(n_levels)}};
  return space;
}

}  // namespace thetapi
