#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "thetapi/spaces.hpp"

namespace thetapi {

/// Unordered edge stored with first < second.
using Edge = std::pair<Vertex, Vertex>;

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline constexpr std::size_t kGridAccelerationThreshold = 5000;

/**
 * The scale graph: vertices are the points of the space, {i, j} is an edge
 * iff i != j and dist(i, j) <= theta (closed condition). Walks with
 * optional stays are exactly the theta-paths.
 */
class ThetaGraph {
 public:
  enum class Method { automatic, naive, grid };

  static ThetaGraph build(SpaceRef space, double theta, Method method = Method::automatic);

  const SpaceRef& space() const { return space_; }
  double theta() const { return theta_; }
  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  bool adjacent(Vertex a, Vertex b) const;
  bool is_complete() const;

  /// Same vertex set, keeping only edges with both endpoints in `keep`.
  ThetaGraph induced(const std::vector<bool>& keep) const;

 private:
  ThetaGraph() = default;
  void finish();

  SpaceRef space_;
  double theta_ = 0.0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
};

/// Connected components, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> components(const ThetaGraph& graph);

inline constexpr std::size_t kNoVertex = static_cast<std::size_t>(-1);

/**
 * BFS spanning tree of the root's component (children in ascending id),
 * together with the numbering of the non-tree edges of that component.
 * Generator i is the i-th non-tree edge in ascending (u, v) order and is
 * canonically oriented u -> v with u < v.
 */
class SpanningData {
 public:
  SpanningData(const ThetaGraph& graph, Vertex root);

  Vertex root() const { return root_; }
  bool in_component(Vertex v) const { return v < depth_.size() && depth_[v] != kNoVertex; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  std::size_t depth(Vertex v) const { return depth_[v]; }
  std::size_t component_of(Vertex v) const { return component_[v]; }
  const std::vector<Vertex>& parents() const { return parent_; }
  const std::vector<Vertex>& component_vertices() const { return order_; }

  bool is_tree_edge(Vertex a, Vertex b) const;
  /// Vertices from the root down to v, inclusive.
  std::vector<Vertex> tree_path_from_root(Vertex v) const;

  const std::vector<Edge>& generators() const { return generators_; }
  /// Signed letter (+-(index+1)) for traversing a -> b, or 0 for tree edges and stays.
  int letter(Vertex a, Vertex b) const;

 private:
  Vertex root_;
  std::vector<Vertex> parent_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> component_;
  std::vector<Vertex> order_;
  std::vector<Edge> generators_;
};

SpanningData spanning_tree(const ThetaGraph& graph, Vertex root);

struct ShortCycles {
  std::vector<std::array<Vertex, 3>> triangles;
  std::vector<std::array<Vertex, 4>> squares;
};

/**
 * All simple 3- and 4-cycles, each once, in canonical form: rotated so the
 * smallest vertex comes first, oriented so the second vertex is smaller than
 * the last. Lists are sorted.
 */
ShortCycles short_cycles(const ThetaGraph& graph, bool chordless_squares_only = false);

/// Sorted distinct positive pairwise distances. Values closer than a relative
/// 1e-12 are merged into the largest member of the cluster.
std::vector<double> critical_scales(const FiniteMetricSpace& space);

/**
 * Repeatedly deletes dominated vertices (N[v] contained in N[w] for a
 * neighbour w), never deleting `keep`. Returns the reduced graph and the
 * retraction onto it, a reflexive graph homomorphism that fixes survivors.
 * The filled short-cycle complex keeps its fundamental group under this.
 */
struct CollapsedGraph {
  ThetaGraph graph;
  std::vector<Vertex> retraction;
  std::size_t removed = 0;
};

CollapsedGraph collapse_dominated(const ThetaGraph& graph, Vertex keep);

}  // namespace thetapi
