#include "thetapi/theta_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <queue>

#include "thetapi/error.hpp"

namespace thetapi {

namespace {

void naive_edges(const FiniteMetricSpace& space, double theta, std::vector<std::vector<Vertex>>& adj) {
  const std::size_t n = space.size();
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (space.dist(i, j) <= theta) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
}

// Uniform grid with cell side theta; every coordinate metric bounds each
// coordinate difference by the distance, so neighbours sit in adjacent cells.
void grid_edges(const FiniteMetricSpace& space, double theta, std::vector<std::vector<Vertex>>& adj) {
  const std::size_t n = space.size();
  const std::size_t d = space.dimension();
  std::map<std::vector<long long>, std::vector<Vertex>> cells;
  std::vector<std::vector<long long>> keys(n);
  for (Vertex i = 0; i < n; ++i) {
    std::vector<long long> key(d);
    for (std::size_t k = 0; k < d; ++k) key[k] = static_cast<long long>(std::floor(space.coord(i)[k] / theta));
    cells[key].push_back(i);
    keys[i] = std::move(key);
  }
  std::size_t offsets = 1;
  for (std::size_t k = 0; k < d; ++k) offsets *= 3;
  std::vector<long long> probe(d);
  for (Vertex i = 0; i < n; ++i) {
    for (std::size_t code = 0; code < offsets; ++code) {
      std::size_t c = code;
      for (std::size_t k = 0; k < d; ++k) {
        probe[k] = keys[i][k] + static_cast<long long>(c % 3) - 1;
        c /= 3;
      }
      auto it = cells.find(probe);
      if (it == cells.end()) continue;
      for (Vertex j : it->second)
        if (j > i && space.dist(i, j) <= theta) {
          adj[i].push_back(j);
          adj[j].push_back(i);
        }
    }
  }
}

}  // namespace

ThetaGraph ThetaGraph::build(SpaceRef space, double theta, Method method) {
  require(space != nullptr, "ThetaGraph::build: null space");
  require(theta > 0.0 && std::isfinite(theta), "ThetaGraph::build: theta must be positive");
  ThetaGraph g;
  g.space_ = std::move(space);
  g.theta_ = theta;
  g.adj_.assign(g.space_->size(), {});
  const bool grid_ok = g.space_->has_coords() && g.space_->dimension() <= 4;
  if (method == Method::automatic)
    method = grid_ok && g.space_->size() > kGridAccelerationThreshold ? Method::grid : Method::naive;
  require(method != Method::grid || grid_ok, "ThetaGraph::build: grid method needs low-dimensional coordinates");
  if (method == Method::grid)
    grid_edges(*g.space_, theta, g.adj_);
  else
    naive_edges(*g.space_, theta, g.adj_);
  g.finish();
  return g;
}

void ThetaGraph::finish() {
  edges_.clear();
  for (Vertex v = 0; v < adj_.size(); ++v) {
    auto& a = adj_[v];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    for (Vertex w : a)
      if (w > v) edges_.emplace_back(v, w);
  }
}

bool ThetaGraph::adjacent(Vertex a, Vertex b) const {
  const auto& n = adj_[a];
  return std::binary_search(n.begin(), n.end(), b);
}

bool ThetaGraph::is_complete() const {
  const std::size_t n = adj_.size();
  return edges_.size() == n * (n - 1) / 2;
}

ThetaGraph ThetaGraph::induced(const std::vector<bool>& keep) const {
  ThetaGraph g;
  g.space_ = space_;
  g.theta_ = theta_;
  g.adj_.assign(adj_.size(), {});
  for (Vertex v = 0; v < adj_.size(); ++v) {
    if (!keep[v]) continue;
    for (Vertex w : adj_[v])
      if (keep[w]) g.adj_[v].push_back(w);
  }
  g.finish();
  return g;
}

std::vector<std::vector<Vertex>> components(const ThetaGraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (Vertex w : graph.neighbors(comp[head]))
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

SpanningData::SpanningData(const ThetaGraph& graph, Vertex root) : root_(root) {
  const std::size_t n = graph.vertex_count();
  require(root < n, "spanning_tree: root " + std::to_string(root) + " not in graph");
  parent_.assign(n, kNoVertex);
  depth_.assign(n, kNoVertex);
  component_.assign(n, kNoVertex);
  const auto comps = components(graph);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (Vertex v : comps[c]) component_[v] = c;

  depth_[root] = 0;
  order_.push_back(root);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const Vertex v = order_[head];
    for (Vertex w : graph.neighbors(v))
      if (depth_[w] == kNoVertex) {
        depth_[w] = depth_[v] + 1;
        parent_[w] = v;
        order_.push_back(w);
      }
  }
  for (const auto& [u, v] : graph.edges())
    if (depth_[u] != kNoVertex && !is_tree_edge(u, v)) generators_.emplace_back(u, v);
}

bool SpanningData::is_tree_edge(Vertex a, Vertex b) const {
  return (parent_[a] == b) || (parent_[b] == a);
}

std::vector<Vertex> SpanningData::tree_path_from_root(Vertex v) const {
  require(in_component(v), "tree path requested for a vertex outside the root component");
  std::vector<Vertex> path;
  for (Vertex x = v; x != kNoVertex; x = parent_[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

int SpanningData::letter(Vertex a, Vertex b) const {
  if (a == b || is_tree_edge(a, b)) return 0;
  const Edge e = make_edge(a, b);
  const auto it = std::lower_bound(generators_.begin(), generators_.end(), e);
  ensure(it != generators_.end() && *it == e, "letter: step is not an edge of the spanning component");
  const int index = static_cast<int>(it - generators_.begin()) + 1;
  return a < b ? index : -index;
}

SpanningData spanning_tree(const ThetaGraph& graph, Vertex root) { return SpanningData(graph, root); }

ShortCycles short_cycles(const ThetaGraph& graph, bool chordless_squares_only) {
  ShortCycles out;
  const std::size_t n = graph.vertex_count();
  for (Vertex a = 0; a < n; ++a) {
    const auto& na = graph.neighbors(a);
    for (auto ib = std::upper_bound(na.begin(), na.end(), a); ib != na.end(); ++ib) {
      const Vertex b = *ib;
      const auto& nb = graph.neighbors(b);
      // triangles a < b < c
      auto ic = std::upper_bound(na.begin(), na.end(), b);
      auto jc = std::upper_bound(nb.begin(), nb.end(), b);
      while (ic != na.end() && jc != nb.end()) {
        if (*ic < *jc) {
          ++ic;
        } else if (*jc < *ic) {
          ++jc;
        } else {
          out.triangles.push_back({a, b, *ic});
          ++ic;
          ++jc;
        }
      }
    }
    // squares (a, b, c, d): a smallest, b < d, c opposite to a
    std::map<Vertex, std::vector<Vertex>> by_opposite;
    for (auto ib = std::upper_bound(na.begin(), na.end(), a); ib != na.end(); ++ib)
      for (Vertex c : graph.neighbors(*ib))
        if (c > a) by_opposite[c].push_back(*ib);
    for (auto& [c, mids] : by_opposite) {
      for (std::size_t i = 0; i < mids.size(); ++i)
        for (std::size_t j = i + 1; j < mids.size(); ++j) {
          const Vertex b = mids[i], d = mids[j];
          if (chordless_squares_only && (graph.adjacent(a, c) || graph.adjacent(b, d))) continue;
          out.squares.push_back({a, b, c, d});
        }
    }
  }
  std::sort(out.triangles.begin(), out.triangles.end());
  std::sort(out.squares.begin(), out.squares.end());
  return out;
}

std::vector<double> critical_scales(const FiniteMetricSpace& space) {
  std::vector<double> d;
  const std::size_t n = space.size();
  d.reserve(n * (n - 1) / 2);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      const double v = space.dist(i, j);
      if (v > 0.0) d.push_back(v);
    }
  std::sort(d.begin(), d.end());
  std::vector<double> out;
  for (double v : d) {
    if (!out.empty() && v - out.back() <= 1e-12 * v)
      out.back() = v;
    else
      out.push_back(v);
  }
  return out;
}

CollapsedGraph collapse_dominated(const ThetaGraph& graph, Vertex keep) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) adj[v] = graph.neighbors(v);
  std::vector<bool> alive(n, true);
  std::vector<Vertex> target(n, kNoVertex);

  // N[v] subset of N[w] for adjacent v, w
  auto dominated_by = [&](Vertex v, Vertex w) {
    const auto& nv = adj[v];
    const auto& nw = adj[w];
    auto jw = nw.begin();
    for (Vertex x : nv) {
      if (x == w) continue;
      jw = std::lower_bound(jw, nw.end(), x);
      if (jw == nw.end() || *jw != x) return false;
    }
    return true;
  };

  std::deque<Vertex> queue;
  std::vector<bool> queued(n, false);
  for (Vertex v = 0; v < n; ++v)
    if (v != keep && !adj[v].empty()) {
      queue.push_back(v);
      queued[v] = true;
    }
  std::size_t removed = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    queued[v] = false;
    if (!alive[v]) continue;
    Vertex dominator = kNoVertex;
    for (Vertex w : adj[v])
      if (adj[w].size() >= adj[v].size() && dominated_by(v, w)) {
        dominator = w;
        break;
      }
    if (dominator == kNoVertex) continue;
    alive[v] = false;
    target[v] = dominator;
    ++removed;
    for (Vertex w : adj[v]) {
      auto& nw = adj[w];
      nw.erase(std::lower_bound(nw.begin(), nw.end(), v));
      if (w != keep && !queued[w]) {
        queued[w] = true;
        queue.push_back(w);
      }
    }
    adj[v].clear();
  }

  std::vector<Vertex> retraction(n);
  for (Vertex v = 0; v < n; ++v) {
    Vertex x = v;
    while (!alive[x]) x = target[x];
    retraction[v] = x;
  }
  return CollapsedGraph{graph.induced(alive), std::move(retraction), removed};
}

}  // namespace thetapi
