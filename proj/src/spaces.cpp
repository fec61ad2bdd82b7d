#include "thetapi/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <sstream>

#include "thetapi/error.hpp"

namespace thetapi {

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::euclidean: return "euclidean";
    case Metric::l1: return "l1";
    case Metric::linf: return "linf";
    case Metric::product_l1: return "product_l1";
  }
  return "euclidean";
}

Metric metric_from_string(const std::string& name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "l1") return Metric::l1;
  if (name == "linf") return Metric::linf;
  if (name == "product_l1") return Metric::product_l1;
  fail("unknown metric '" + name + "' (expected euclidean, l1, linf or product_l1)");
}

double point_distance(const Point& a, const Point& b, Metric metric, std::size_t block_dim) {
  const std::size_t d = a.size();
  switch (metric) {
    case Metric::euclidean: {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double t = a[k] - b[k];
        s += t * t;
      }
      return std::sqrt(s);
    }
    case Metric::l1: {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += std::abs(a[k] - b[k]);
      return s;
    }
    case Metric::linf: {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s = std::max(s, std::abs(a[k] - b[k]));
      return s;
    }
    case Metric::product_l1: {
      double total = 0.0;
      for (std::size_t start = 0; start < d; start += block_dim) {
        double s = 0.0;
        for (std::size_t k = start; k < std::min(d, start + block_dim); ++k) {
          const double t = a[k] - b[k];
          s += t * t;
        }
        total += std::sqrt(s);
      }
      return total;
    }
  }
  return 0.0;
}

FiniteMetricSpace FiniteMetricSpace::from_points(std::vector<Point> coords, Metric metric, Vertex basepoint,
                                                 std::size_t block_dim) {
  require(!coords.empty(), "from_points: empty point list");
  require(basepoint < coords.size(), "from_points: basepoint " + std::to_string(basepoint) + " out of range");
  const std::size_t d = coords.front().size();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    require(coords[i].size() == d, "from_points: point " + std::to_string(i) + " has dimension " +
                                       std::to_string(coords[i].size()) + ", expected " + std::to_string(d));
    for (double c : coords[i]) require(std::isfinite(c), "from_points: non-finite coordinate in point " + std::to_string(i));
  }
  if (metric == Metric::product_l1) {
    require(block_dim > 0 && d % block_dim == 0, "from_points: dimension not a multiple of the block size");
  }
  FiniteMetricSpace space;
  space.size_ = coords.size();
  space.basepoint_ = basepoint;
  space.metric_ = metric;
  space.block_dim_ = block_dim;
  space.coords_ = std::move(coords);
  return space;
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<std::vector<double>> matrix, Vertex basepoint) {
  const std::size_t n = matrix.size();
  require(n > 0, "from_matrix: empty matrix");
  require(basepoint < n, "from_matrix: basepoint " + std::to_string(basepoint) + " out of range");
  for (std::size_t i = 0; i < n; ++i) {
    require(matrix[i].size() == n, "from_matrix: row " + std::to_string(i) + " has " +
                                       std::to_string(matrix[i].size()) + " entries, expected " + std::to_string(n));
  }
  const double tol = kMetricTolerance;
  for (std::size_t i = 0; i < n; ++i) {
    require(std::abs(matrix[i][i]) <= tol, "from_matrix: nonzero diagonal at " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      require(std::isfinite(matrix[i][j]), "from_matrix: non-finite entry");
      require(matrix[i][j] >= -tol, "from_matrix: negative entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      require(std::abs(matrix[i][j] - matrix[j][i]) <= tol,
              "from_matrix: asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (matrix[i][j] > matrix[i][k] + matrix[k][j] + tol) {
          fail("from_matrix: triangle violation at (" + std::to_string(i) + "," + std::to_string(j) + ") via " +
               std::to_string(k));
        }
      }
  FiniteMetricSpace space;
  space.size_ = n;
  space.basepoint_ = basepoint;
  space.matrix_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // symmetrize and clamp the tolerated noise
      const double v = i == j ? 0.0 : std::max(0.0, 0.5 * (matrix[i][j] + matrix[j][i]));
      space.matrix_[i * n + j] = v;
    }
  return space;
}

FiniteMetricSpace FiniteMetricSpace::with_basepoint(Vertex basepoint) const {
  require(basepoint < size_, "basepoint " + std::to_string(basepoint) + " out of range");
  FiniteMetricSpace copy = *this;
  copy.basepoint_ = basepoint;
  return copy;
}

double FiniteMetricSpace::dist(Vertex i, Vertex j) const {
  if (!matrix_.empty()) return matrix_[i * size_ + j];
  if (i == j) return 0.0;
  return point_distance(coords_[i], coords_[j], metric_, block_dim_);
}

std::vector<std::vector<double>> FiniteMetricSpace::distance_matrix() const {
  std::vector<std::vector<double>> out(size_, std::vector<double>(size_, 0.0));
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = i + 1; j < size_; ++j) out[i][j] = out[j][i] = dist(i, j);
  return out;
}

namespace {

struct Fnv1a {
  std::uint64_t h = 1469598103934665603ULL;
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  }
  void value(double v) {
    if (v == 0.0) v = 0.0;  // fold -0
    bytes(&v, sizeof v);
  }
  void value(std::uint64_t v) { bytes(&v, sizeof v); }
};

}  // namespace

std::string FiniteMetricSpace::content_hash() const {
  Fnv1a f;
  f.value(static_cast<std::uint64_t>(size_));
  f.value(static_cast<std::uint64_t>(basepoint_));
  if (!matrix_.empty()) {
    f.value(static_cast<std::uint64_t>(0xD157));
    for (double v : matrix_) f.value(v);
  } else {
    f.value(static_cast<std::uint64_t>(metric_));
    f.value(static_cast<std::uint64_t>(block_dim_));
    for (const auto& p : coords_)
      for (double v : p) f.value(v);
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << f.h;
  return os.str();
}

void PolylinePath::validate() const {
  require(vertices.size() >= 2, "polyline needs at least 2 vertices");
  const std::size_t d = vertices.front().size();
  for (const auto& v : vertices) require(v.size() == d, "polyline vertices have mixed dimensions");
  if (closed) require(vertices.front() == vertices.back(), "closed polyline must end where it starts");
}

double PolylinePath::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i)
    total += point_distance(vertices[i - 1], vertices[i], Metric::euclidean);
  return total;
}

}  // namespace thetapi
