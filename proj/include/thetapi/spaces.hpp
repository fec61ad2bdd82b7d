/**
 * Finite metric spaces and the deterministic point-cloud generators for the
 * example spaces (circles, Hawaiian earring and window, telescope, circle
 * products, sine-graph spaces, annulus, circle tree).
 *
 * A space is either backed by coordinates plus a named metric, or by an
 * explicit distance matrix. Spaces are immutable once built and are shared
 * through `SpaceRef` by graphs and paths.
 */
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace thetapi {

using Vertex = std::size_t;
using Point = std::vector<double>;

enum class Metric {
  euclidean,
  l1,
  linf,
  /// Sum of euclidean distances over consecutive coordinate blocks of
  /// `block_dim` entries (the l1 product of euclidean factors).
  product_l1,
};

std::string to_string(Metric metric);
Metric metric_from_string(const std::string& name);

/// Absolute tolerance for metric-axiom checks on explicit matrices.
inline constexpr double kMetricTolerance = 1e-9;

/// Default target spacing of the generators, in ambient units.
inline constexpr double kDefaultSpacing = 0.05;

class FiniteMetricSpace {
 public:
  static FiniteMetricSpace from_points(std::vector<Point> coords, Metric metric = Metric::euclidean,
                                       Vertex basepoint = 0, std::size_t block_dim = 2);

  /**
   * Validates D as a (pseudo)metric: square, zero diagonal, non-negative,
   * symmetric and triangle inequality, each up to `kMetricTolerance`. A
   * triangle violation names the witnessing triple.
   */
  static FiniteMetricSpace from_matrix(std::vector<std::vector<double>> matrix, Vertex basepoint = 0);

  std::size_t size() const { return size_; }
  Vertex basepoint() const { return basepoint_; }
  FiniteMetricSpace with_basepoint(Vertex basepoint) const;

  double dist(Vertex i, Vertex j) const;

  bool has_coords() const { return !coords_.empty(); }
  const std::vector<Point>& coords() const { return coords_; }
  const Point& coord(Vertex i) const { return coords_[i]; }
  std::size_t dimension() const { return coords_.empty() ? 0 : coords_.front().size(); }
  Metric metric() const { return metric_; }
  std::size_t block_dim() const { return block_dim_; }
  bool has_matrix() const { return !matrix_.empty(); }

  /// Full distance matrix (computed on demand for coordinate spaces).
  std::vector<std::vector<double>> distance_matrix() const;

  /// Stable 64-bit FNV-1a hash of the metric data, as 16 hex digits.
  std::string content_hash() const;

  /// Free-form provenance: generator name, parameters, truncation depth.
  std::map<std::string, std::string> metadata;

 private:
  FiniteMetricSpace() = default;

  std::size_t size_ = 0;
  Vertex basepoint_ = 0;
  Metric metric_ = Metric::euclidean;
  std::size_t block_dim_ = 2;
  std::vector<Point> coords_;
  std::vector<double> matrix_;  // row-major, only for matrix-backed spaces
};

using SpaceRef = std::shared_ptr<const FiniteMetricSpace>;

inline SpaceRef share(FiniteMetricSpace space) {
  return std::make_shared<const FiniteMetricSpace>(std::move(space));
}

/// Distance between two coordinate vectors under `metric`.
double point_distance(const Point& a, const Point& b, Metric metric, std::size_t block_dim = 2);

/// A polyline standing in for a continuous path; closed means first == last.
struct PolylinePath {
  std::vector<Point> vertices;
  bool closed = false;

  void validate() const;
  double length() const;
};

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

FiniteMetricSpace gen_circle(double radius, std::size_t count, const Point& center = {0.0, 0.0});

/// Default per-circle sample count for a target spacing: max(8, ceil(2*pi*(1/k)/spacing)).
std::vector<std::size_t> earring_default_samples(std::size_t n_circles, double spacing = kDefaultSpacing);

/**
 * Circles of radius 1/n centred at (1/n, 0), n = 1..n_circles. The shared
 * origin appears once, as point 0 (the basepoint). Circle k occupies the
 * next samples[k]-1 points in counter-clockwise order starting next to the
 * origin.
 */
FiniteMetricSpace gen_hawaiian_earring(std::size_t n_circles, std::vector<std::size_t> samples = {});

struct TelescopeOptions {
  std::size_t n_stages = 3;
  std::size_t samples_per_ring = 24;
  bool spokes = true;
  /// Sample the base disks of every cylindrical shell. Without them
  /// consecutive stages do not touch and the cloud is disconnected.
  bool caps = true;
};

/**
 * Telescope space: stage n is a cylindrical shell of radius 2^-n over
 * x in [n, n+1] with 8 spokes at x = n + 1/2 running inwards to radius
 * 2^-(n+1). Basepoint is the leftmost ring point (0, 1, 0).
 */
FiniteMetricSpace gen_telescope(const TelescopeOptions& options);
FiniteMetricSpace gen_telescope(std::size_t n_stages, std::size_t samples_per_ring, bool spokes);

/// Vertex ids of the eight spoke tips of stage n (the inner octagon), in angular order.
std::vector<Vertex> telescope_octagon(const FiniteMetricSpace& telescope, std::size_t stage);

/// Leftmost ring point of stage n: (n, 2^-n, 0).
Vertex telescope_stage_anchor(const FiniteMetricSpace& telescope, std::size_t stage);

inline constexpr std::size_t kDefaultPointCap = 100000;

/// l1 product of circles of radius 2^-n; point (i_0, .., i_{k-1}) has id
/// sum_n i_n * prod_{m<n} samples[m]. Throws when the product exceeds `cap`.
FiniteMetricSpace gen_circle_product(std::size_t n_factors, std::vector<std::size_t> samples = {},
                                     std::size_t cap = kDefaultPointCap);

/// Square with corners (+-1, +-1) plus the central crosses of X_1..X_depth.
FiniteMetricSpace gen_hawaiian_window(std::size_t depth, double spacing = kDefaultSpacing);

enum class SineVariant { flat, three_squares };

FiniteMetricSpace gen_sine_space(SineVariant variant, double resolution);

FiniteMetricSpace gen_annulus(double r_in, double r_out, double spacing = kDefaultSpacing);

/// Ids of the innermost ring of an annulus cloud, in angular order.
std::vector<Vertex> annulus_inner_ring(const FiniteMetricSpace& annulus);

FiniteMetricSpace gen_circle_tree(std::size_t n_levels, double spacing = kDefaultSpacing);

}  // namespace thetapi
