/**
 * Discrete paths at a scale theta and their calculus: validation,
 * lazification, concatenation and inversion, grid-homotopy certificates with
 * an independent verifier, and the discretisation of polylines.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thetapi/spaces.hpp"
#include "thetapi/theta_graph.hpp"
#include "thetapi/words.hpp"

namespace thetapi {

/// A sequence of points (z_0, .., z_n) of a space, intended to satisfy
/// dist(z_i, z_{i+1}) <= theta. Construction does not check; see validate().
class ThetaPath {
 public:
  ThetaPath(SpaceRef space, double theta, std::vector<Vertex> points);

  /// Throws ValidationError unless the path is a valid theta-path.
  static ThetaPath checked(SpaceRef space, double theta, std::vector<Vertex> points);
  static ThetaPath constant(SpaceRef space, double theta, Vertex point);

  const SpaceRef& space() const { return space_; }
  double theta() const { return theta_; }
  const std::vector<Vertex>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  Vertex front() const { return points_.front(); }
  Vertex back() const { return points_.back(); }
  bool closed() const { return points_.front() == points_.back(); }
  ThetaPath at_scale(double theta) const { return ThetaPath(space_, theta, points_); }

  bool operator==(const ThetaPath& other) const {
    return space_ == other.space_ && theta_ == other.theta_ && points_ == other.points_;
  }

 private:
  SpaceRef space_;
  double theta_;
  std::vector<Vertex> points_;
};

struct StepViolation {
  std::size_t index;  // offending step is points[index] -> points[index + 1]
  double distance;
};

std::optional<StepViolation> validate(const ThetaPath& path);

/// output[j] = input[schedule[j]]; schedule must be monotone and onto [0, n].
ThetaPath lazify(const ThetaPath& path, const std::vector<std::size_t>& schedule);
/// Repeats the last point until the path has `length` entries.
ThetaPath pad_to_length(const ThetaPath& path, std::size_t length);
ThetaPath delazify(const ThetaPath& path);
std::vector<Vertex> delazify(const std::vector<Vertex>& points);

ThetaPath concat(const ThetaPath& p, const ThetaPath& q);
ThetaPath invert(const ThetaPath& p);

struct GridHomotopy {
  double theta = 0.0;
  std::vector<std::vector<Vertex>> rows;
  bool endpoints_fixed = true;
};

struct CertificateReport {
  bool ok = true;
  std::string message;
  std::size_t row = 0;
  std::size_t column = 0;
  double distance = 0.0;

  explicit operator bool() const { return ok; }
};

/**
 * Independent checker for theta-grid homotopies. Accepts iff all rows have
 * equal length, every row and every column step is within theta, the
 * endpoints are constant (when fixed), and the first/last rows are
 * lazifications of `from`/`to` (compared after delazification).
 */
CertificateReport verify_grid_homotopy(const GridHomotopy& h, const ThetaPath& from, const ThetaPath& to);

/// Removes rows whose neighbours are already column-adjacent.
GridHomotopy minimize_certificate(const FiniteMetricSpace& space, GridHomotopy h);

// ---------------------------------------------------------------------------
// Discretisation of polylines
// ---------------------------------------------------------------------------

struct DiscretizeOptions {
  /// Force every polyline vertex to be a breakpoint.
  bool keep_vertices = true;
  /// Sub-arcs are cut no longer than step_fraction * theta (in (0, 1]).
  double step_fraction = 1.0;
  /// Further arc-length positions to cut at.
  std::vector<double> extra_breakpoints;
};

/**
 * Breakpoints 0 = s_0 < .. < s_k = L along arc length with every sub-arc of
 * length <= theta, so each sub-arc lies in the closed theta-ball about its
 * starting point.
 */
struct Discretisation {
  double theta = 0.0;
  bool closed = false;
  std::vector<double> breakpoints;
  std::vector<Point> points;
};

Point point_at(const PolylinePath& poly, double arc_length);

Discretisation discretize(const PolylinePath& poly, double theta, const DiscretizeOptions& options = {});

/// The discretisation as a theta-path on the cloud of its own points.
ThetaPath as_theta_path(const Discretisation& d);

struct SnappedPath {
  ThetaPath path;
  double snap_radius;      // largest snap displacement actually used
  double effective_theta;  // theta + 2 * snap_radius, the scale the path is valid at
};

/// Discretises at theta and moves every point to its nearest cloud point
/// (smallest id on ties). Fails if some point is farther than max_snap.
SnappedPath discretize_onto(const PolylinePath& poly, double theta, const SpaceRef& cloud, double max_snap,
                            const DiscretizeOptions& options = {});

/**
 * Constructive proof that two discretisations of the same polyline are
 * theta-homotopic: both become paths on the cloud of the common refinement,
 * joined by the three-row certificate (lazified first, refinement, lazified
 * second).
 */
struct RefinementCertificate {
  SpaceRef space;
  ThetaPath first;
  ThetaPath second;
  GridHomotopy homotopy;
};

RefinementCertificate refinement_certificate(const PolylinePath& poly, const Discretisation& a,
                                             const Discretisation& b);

// ---------------------------------------------------------------------------
// Spanning-tree encoding
// ---------------------------------------------------------------------------

/// Reads the non-tree edges crossed by a walk; stays and tree edges are skipped.
Word walk_to_word(const std::vector<Vertex>& walk, const SpanningData& spanning);

/// Word of a closed path based at the spanning root.
Word loop_to_word(const ThetaPath& path, const SpanningData& spanning);

}  // namespace thetapi
