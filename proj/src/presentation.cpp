#include "thetapi/presentation.hpp"

#include <algorithm>
#include <sstream>

#include "thetapi/error.hpp"

namespace thetapi {

GroupPresentation GroupPresentation::abstract(std::size_t n_generators, std::vector<Word> relators) {
  GroupPresentation p;
  p.generator_count_override = n_generators;
  p.relators = std::move(relators);
  p.validate();
  return p;
}

void GroupPresentation::validate() const {
  const auto n = static_cast<int>(generator_count());
  for (const Word& r : relators) {
    for (int x : r) require(x != 0 && generator_of(x) < n, "relator letter out of range");
    require(is_freely_reduced(r), "relator " + word_to_string(r) + " is not freely reduced");
  }
}

std::size_t GroupPresentation::total_relator_length() const {
  std::size_t total = 0;
  for (const Word& r : relators) total += r.size();
  return total;
}

std::string AbelianInvariants::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (rank > 0 || torsion.empty()) {
    os << (rank == 0 ? "0" : rank == 1 ? "Z" : "Z^" + std::to_string(rank));
    first = false;
  }
  for (long long d : torsion) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  return os.str();
}

GroupPresentation presentation_of_graph(const ThetaGraph& graph, const SpanningData& spanning,
                                        bool chordless_squares_only) {
  GroupPresentation p;
  p.generators = spanning.generators();
  p.theta = graph.theta();
  p.space_hash = graph.space()->content_hash();
  p.basepoint = spanning.root();
  p.tree = "bfs, ascending children, root " + std::to_string(spanning.root());

  const ShortCycles cycles = short_cycles(graph, chordless_squares_only);
  auto add = [&](const Vertex* c, std::size_t len) {
    if (!spanning.in_component(c[0])) return;
    std::vector<Vertex> walk(c, c + len);
    walk.push_back(c[0]);
    Word w = walk_to_word(walk, spanning);
    if (!w.empty()) p.relators.push_back(std::move(w));
  };
  for (const auto& t : cycles.triangles) add(t.data(), 3);
  for (const auto& s : cycles.squares) add(s.data(), 4);
  return p;
}

namespace {

// Neighbour lists with a parallel "proven trivial" flag per edge end.
class TrivialEdges {
 public:
  TrivialEdges(const ThetaGraph& g) : nb_(g.vertex_count()), flag_(g.vertex_count()) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      nb_[v] = g.neighbors(v);
      flag_[v].assign(nb_[v].size(), 0);
    }
  }

  const std::vector<Vertex>& nb(Vertex v) const { return nb_[v]; }
  bool trivial(Vertex a, Vertex b) const { return flag_[a][slot(a, b)] != 0; }
  bool trivial_at(Vertex a, std::size_t k) const { return flag_[a][k] != 0; }

  bool mark(Vertex a, Vertex b) {
    const std::size_t k = slot(a, b);
    if (flag_[a][k]) return false;
    flag_[a][k] = 1;
    flag_[b][slot(b, a)] = 1;
    queue_.emplace_back(a, b);
    return true;
  }

  // Triangle closure over everything queued.
  void propagate() {
    while (!queue_.empty()) {
      const auto [u, v] = queue_.back();
      queue_.pop_back();
      const auto &nu = nb_[u], &nv = nb_[v];
      for (std::size_t i = 0, j = 0; i < nu.size() && j < nv.size();) {
        if (nu[i] < nv[j]) {
          ++i;
        } else if (nv[j] < nu[i]) {
          ++j;
        } else {
          const bool tu = flag_[u][i], tv = flag_[v][j];
          if (tu && !tv) mark(v, nu[i]);
          if (tv && !tu) mark(u, nu[i]);
          ++i;
          ++j;
        }
      }
    }
  }

 private:
  std::size_t slot(Vertex a, Vertex b) const {
    const auto& n = nb_[a];
    return static_cast<std::size_t>(std::lower_bound(n.begin(), n.end(), b) - n.begin());
  }

  std::vector<std::vector<Vertex>> nb_;
  std::vector<std::vector<char>> flag_;
  std::vector<Edge> queue_;
};

// Calls f(x, y) for every 4-cycle u-v-x-y-u.
template <class F>
void squares_through(const TrivialEdges& t, Vertex u, Vertex v, F&& f) {
  const auto& nu = t.nb(u);
  for (Vertex x : t.nb(v)) {
    if (x == u) continue;
    const auto& nx = t.nb(x);
    for (std::size_t i = 0, j = 0; i < nx.size() && j < nu.size();) {
      if (nx[i] < nu[j]) {
        ++i;
      } else if (nu[j] < nx[i]) {
        ++j;
      } else {
        if (nx[i] != v) f(x, nx[i]);
        ++i;
        ++j;
      }
    }
  }
}

}  // namespace

GroupPresentation pruned_presentation_of_graph(const ThetaGraph& graph, const SpanningData& spanning,
                                               bool chordless_squares_only) {
  TrivialEdges t(graph);
  for (Vertex v : spanning.component_vertices())
    if (spanning.parent(v) != kNoVertex) t.mark(v, spanning.parent(v));
  t.propagate();
  const auto& all = spanning.generators();
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [u, v] : all) {
      if (t.trivial(u, v)) continue;
      bool found = false;
      squares_through(t, u, v, [&](Vertex x, Vertex y) {
        found = found || (t.trivial(v, x) && t.trivial(x, y) && t.trivial(y, u));
      });
      if (found) {
        t.mark(u, v);
        t.propagate();
        changed = true;
      }
    }
  }

  GroupPresentation p;
  p.theta = graph.theta();
  p.space_hash = graph.space()->content_hash();
  p.basepoint = spanning.root();
  p.tree = "bfs, ascending children, root " + std::to_string(spanning.root()) + ", trivial edges pruned";
  p.reduced_index.assign(all.size(), -1);
  for (std::size_t k = 0; k < all.size(); ++k)
    if (!t.trivial(all[k].first, all[k].second)) {
      p.reduced_index[k] = static_cast<long>(p.generators.size());
      p.generators.push_back(all[k]);
    }

  // each cycle is emitted from its smallest surviving edge
  auto emit = [&](std::vector<Vertex> walk, Edge self) {
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
      const Edge e = make_edge(walk[i], walk[i + 1]);
      if (e < self && !t.trivial(e.first, e.second)) return;
    }
    Word w = reduce_word(p, walk_to_word(walk, spanning));
    if (!w.empty()) p.relators.push_back(std::move(w));
  };
  for (const Edge& e : p.generators) {
    const auto [u, v] = e;
    const auto &nu = t.nb(u), &nv = t.nb(v);
    for (std::size_t i = 0, j = 0; i < nu.size() && j < nv.size();) {
      if (nu[i] < nv[j]) {
        ++i;
      } else if (nv[j] < nu[i]) {
        ++j;
      } else {
        emit({u, v, nu[i], u}, e);
        ++i;
        ++j;
      }
    }
  }
  for (const Edge& e : p.generators) {
    const auto [u, v] = e;
    squares_through(t, u, v, [&](Vertex x, Vertex y) {
      if (chordless_squares_only && (graph.adjacent(u, x) || graph.adjacent(v, y))) return;
      emit({u, v, x, y, u}, e);
    });
  }
  return p;
}

Word reduce_word(const GroupPresentation& p, const Word& full) {
  if (p.reduced_index.empty()) return full;
  Word w;
  for (int x : full) {
    const long r = p.reduced_index[static_cast<std::size_t>(generator_of(x))];
    if (r >= 0) w.push_back(x > 0 ? static_cast<int>(r) + 1 : -static_cast<int>(r) - 1);
  }
  return free_reduce(w);
}

namespace {

CollapsedGraph working_graph_for(const ThetaGraph& graph, Vertex basepoint, bool collapse) {
  if (collapse) return collapse_dominated(graph, basepoint);
  std::vector<Vertex> identity(graph.vertex_count());
  for (Vertex v = 0; v < identity.size(); ++v) identity[v] = v;
  return CollapsedGraph{graph, std::move(identity), 0};
}

std::vector<bool> component_mask(const ThetaGraph& graph, Vertex root) {
  std::vector<bool> mask(graph.vertex_count(), false);
  std::vector<Vertex> queue{root};
  mask[root] = true;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Vertex w : graph.neighbors(queue[head]))
      if (!mask[w]) {
        mask[w] = true;
        queue.push_back(w);
      }
  return mask;
}

}  // namespace

ScaleComplex::ScaleComplex(SpaceRef space, double theta, Vertex basepoint, const PresentationOptions& options)
    : options_(options),
      graph_(ThetaGraph::build(std::move(space), theta)),
      working_([&] {
        require(basepoint < graph_.vertex_count(), "basepoint " + std::to_string(basepoint) + " out of range");
        auto c = working_graph_for(graph_, basepoint, options.collapse_dominated);
        retraction_ = std::move(c.retraction);
        return std::move(c.graph);
      }()),
      full_component_(component_mask(graph_, basepoint)),
      spanning_(working_, basepoint),
      presentation_(options.prune_trivial_edges
                        ? pruned_presentation_of_graph(working_, spanning_, options.chordless_squares_only)
                        : presentation_of_graph(working_, spanning_, options.chordless_squares_only)),
      abelian_(presentation_) {
  if (options.collapse_dominated) presentation_.tree += ", dominated vertices collapsed";
  std::size_t outside = 0;
  for (bool b : full_component_) outside += b ? 0 : 1;
  if (graph_.neighbors(basepoint).empty() && graph_.vertex_count() > 1)
    presentation_.warnings.push_back("basepoint is isolated at this scale; presentation is trivial");
  else if (outside > 0)
    presentation_.warnings.push_back(std::to_string(outside) + " vertices outside the basepoint component ignored");
  for (auto& comp : components(graph_))
    if (!full_component_[comp.front()]) presentation_.other_components.push_back(std::move(comp));
}

Word ScaleComplex::word_of_walk(const std::vector<Vertex>& walk) const {
  std::vector<Vertex> image(walk.size());
  for (std::size_t i = 0; i < walk.size(); ++i) {
    require(walk[i] < retraction_.size(), "walk vertex out of range");
    image[i] = retraction_[walk[i]];
  }
  return reduce_word(presentation_, walk_to_word(image, spanning_));
}

Word ScaleComplex::word_of_loop(const ThetaPath& loop) const {
  require(loop.space() == space() || loop.space()->content_hash() == space()->content_hash(),
          "loop lives in a different space");
  require(loop.closed(), "loop is not closed");
  require(loop.front() == basepoint(), "loop is not based at the basepoint");
  for (Vertex v : loop.points()) require(in_component(v), "loop leaves the basepoint component");
  if (auto bad = validate(loop.at_scale(theta())))
    fail("loop step " + std::to_string(bad->index) + " exceeds the scale");
  return word_of_walk(loop.points());
}

std::vector<mpz_class> ScaleComplex::class_of(const ThetaPath& loop) const {
  return abelian_.coordinates(word_of_loop(loop));
}

std::vector<Vertex> ScaleComplex::generator_loop(std::size_t i) const {
  require(i < presentation_.generators.size(), "generator index out of range");
  const auto [u, v] = presentation_.generators[i];
  std::vector<Vertex> walk = spanning_.tree_path_from_root(u);
  const auto back = spanning_.tree_path_from_root(v);
  walk.insert(walk.end(), back.rbegin(), back.rend());
  return walk;
}

std::vector<Vertex> ScaleComplex::loop_of_word(const Word& w) const {
  std::vector<Vertex> walk{basepoint()};
  for (int x : w) {
    auto g = generator_loop(static_cast<std::size_t>(generator_of(x)));
    if (x < 0) std::reverse(g.begin(), g.end());
    walk.insert(walk.end(), g.begin() + 1, g.end());
  }
  return walk;
}

GroupPresentation presentation_at_scale(const SpaceRef& space, double theta, Vertex basepoint,
                                        const PresentationOptions& options) {
  return ScaleComplex(space, theta, basepoint, options).presentation();
}

std::vector<mpz_class> class_of_loop(const ThetaPath& path, const GroupPresentation& p, const SpanningData& s) {
  require(path.space()->content_hash() == p.space_hash, "class_of_loop: loop and presentation use different spaces");
  require(path.theta() <= p.theta, "class_of_loop: loop scale exceeds the presentation scale");
  if (auto bad = validate(path)) fail("class_of_loop: loop is not a valid theta-path at step " + std::to_string(bad->index));
  return AbelianCoordinates(p).coordinates(reduce_word(p, loop_to_word(path, s)));
}

bool is_zero_class(const std::vector<mpz_class>& c) {
  return std::all_of(c.begin(), c.end(), [](const mpz_class& x) { return x == 0; });
}

}  // namespace thetapi
