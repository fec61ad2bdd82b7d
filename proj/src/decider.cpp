#include "thetapi/decider.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

#include "thetapi/error.hpp"

namespace thetapi {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::trivial:
      return "trivial";
    case Outcome::nontrivial:
      return "nontrivial";
    case Outcome::unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

struct SequenceHash {
  std::size_t operator()(const std::vector<Vertex>& s) const {
    std::size_t h = 1469598103934665603ULL;
    for (Vertex v : s) h = (h ^ v) * 1099511628211ULL;
    return h;
  }
};

std::vector<Vertex> padded(const std::vector<Vertex>& s, std::size_t width) {
  std::vector<Vertex> row = s;
  row.resize(width, s.back());
  return row;
}

// Replace rewrites `span` entries from `index` on; insert puts `value` after `index`.
struct Move {
  enum class Kind { start, replace, insert } kind = Kind::start;
  std::size_t index = 0;
  Vertex value = 0;
  Vertex second = 0;
  std::size_t span = 1;
};

struct Node {
  std::vector<Vertex> seq;
  std::size_t parent;
  Move move;
};

class Search {
 public:
  Search(const ThetaGraph& graph, const Budget& budget) : graph_(graph), budget_(budget) {}

  // Returns the index of the goal node, if found.
  std::optional<std::size_t> run(const std::vector<Vertex>& start, SearchStats& stats) {
    auto cmp = [this](std::size_t a, std::size_t b) {
      const auto& x = nodes_[a].seq;
      const auto& y = nodes_[b].seq;
      if (x.size() != y.size()) return x.size() > y.size();
      return x > y;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> open(cmp);
    add({start, 0, {}});
    open.push(0);
    while (!open.empty()) {
      const std::size_t cur = open.top();
      open.pop();
      const std::vector<Vertex> s = nodes_[cur].seq;
      if (s.size() == 1) return cur;
      const std::size_t m = s.size() - 1;
      auto try_child = [&](std::vector<Vertex> child, Move mv) -> bool {
        child = delazify(child);
        if (index_.count(child)) return false;
        if (nodes_.size() >= budget_.max_states) {
          stats.budget_exhausted = true;
          return true;
        }
        stats.max_width = std::max(stats.max_width, child.size());
        open.push(add({std::move(child), cur, mv}));
        return false;
      };
      for (std::size_t i = 1; i < m; ++i)
        for (Vertex v : graph_.neighbors(s[i])) {
          if (!near(s[i - 1], v) || !near(v, s[i + 1])) continue;
          std::vector<Vertex> child = s;
          child[i] = v;
          if (try_child(std::move(child), {Move::Kind::replace, i, v, 0, 1})) return finish(stats);
        }
      // two neighbouring entries at once; this fills 4-cycles
      for (std::size_t i = 1; i + 1 < m; ++i)
        for (Vertex a : closed_neighbors(s[i])) {
          if (!near(s[i - 1], a)) continue;
          for (Vertex b : closed_neighbors(s[i + 1])) {
            if ((a == s[i] && b == s[i + 1]) || !near(a, b) || !near(b, s[i + 2])) continue;
            std::vector<Vertex> child = s;
            child[i] = a;
            child[i + 1] = b;
            if (try_child(std::move(child), {Move::Kind::replace, i, a, b, 2})) return finish(stats);
          }
        }
      if (s.size() + 1 <= budget_.max_width)
        for (std::size_t i = 0; i < m; ++i)
          for (Vertex v : graph_.neighbors(s[i])) {
            if (v == s[i + 1] || !graph_.adjacent(v, s[i + 1])) continue;
            std::vector<Vertex> child = s;
            child.insert(child.begin() + static_cast<std::ptrdiff_t>(i) + 1, v);
            if (try_child(std::move(child), {Move::Kind::insert, i, v, 0, 1})) return finish(stats);
          }
      // a detour a, b between neighbouring entries; includes backtracks
      if (s.size() + 2 <= budget_.max_width)
        for (std::size_t i = 0; i < m; ++i)
          for (Vertex a : closed_neighbors(s[i]))
            for (Vertex b : closed_neighbors(s[i + 1])) {
              if (!near(a, b) || (a == s[i] && b == s[i + 1])) continue;
              std::vector<Vertex> child = s;
              child.insert(child.begin() + static_cast<std::ptrdiff_t>(i) + 1, {a, b});
              if (try_child(std::move(child), {Move::Kind::insert, i, a, b, 2})) return finish(stats);
            }
    }
    return finish(stats);
  }

  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  bool near(Vertex a, Vertex b) const { return a == b || graph_.adjacent(a, b); }

  std::vector<Vertex> closed_neighbors(Vertex v) const {
    std::vector<Vertex> out{v};
    for (Vertex u : graph_.neighbors(v))
      if (u != v) out.push_back(u);
    return out;
  }

  std::size_t add(Node n) {
    index_.emplace(n.seq, nodes_.size());
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  std::optional<std::size_t> finish(SearchStats& stats) {
    stats.states = nodes_.size();
    return std::nullopt;
  }

  const ThetaGraph& graph_;
  Budget budget_;
  std::vector<Node> nodes_;
  std::unordered_map<std::vector<Vertex>, std::size_t, SequenceHash> index_;
};

// Rows of uniform width realising the chain of moves from the root to `goal`.
GridHomotopy certificate_from_search(const std::vector<Node>& nodes, std::size_t goal, double theta) {
  std::vector<std::size_t> chain;
  for (std::size_t i = goal;; i = nodes[i].parent) {
    chain.push_back(i);
    if (i == 0) break;
  }
  std::reverse(chain.begin(), chain.end());
  std::size_t width = 1;
  for (std::size_t i : chain) width = std::max(width, nodes[i].seq.size());

  GridHomotopy h;
  h.theta = theta;
  auto push = [&](const std::vector<Vertex>& s) {
    auto row = padded(s, width);
    if (h.rows.empty() || h.rows.back() != row) h.rows.push_back(std::move(row));
  };
  // drops one repeated entry per row so every column moves by a single step
  auto push_collapsing = [&](std::vector<Vertex> s) {
    push(s);
    for (std::size_t i = 0; i + 1 < s.size();) {
      if (s[i] != s[i + 1]) {
        ++i;
        continue;
      }
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      push(s);
    }
  };
  push(nodes[chain.front()].seq);
  for (std::size_t k = 1; k < chain.size(); ++k) {
    const auto& parent = nodes[nodes[chain[k]].parent].seq;
    const Move& mv = nodes[chain[k]].move;
    if (mv.kind == Move::Kind::replace) {
      auto lazy = parent;
      lazy[mv.index] = mv.value;
      if (mv.span == 2) lazy[mv.index + 1] = mv.second;
      push_collapsing(std::move(lazy));
    } else {
      auto dup = parent;
      dup.insert(dup.begin() + static_cast<std::ptrdiff_t>(mv.index) + 1, parent[mv.index]);
      push(dup);
      if (mv.span == 2) {
        dup.insert(dup.begin() + static_cast<std::ptrdiff_t>(mv.index) + 2, parent[mv.index + 1]);
        push(dup);
        dup[mv.index + 2] = mv.second;
      }
      dup[mv.index + 1] = mv.value;
      push_collapsing(std::move(dup));
    }
  }
  return h;
}

Verdict trivial(GridHomotopy h, std::string method, const SearchStats& stats = {}) {
  Verdict v;
  v.outcome = Outcome::trivial;
  v.certificate = std::move(h);
  v.method = std::move(method);
  v.stats = stats;
  return v;
}

}  // namespace

std::optional<GridHomotopy> backtrack_contraction(const ThetaPath& loop) {
  require(loop.closed(), "backtrack_contraction: loop is not closed");
  if (validate(loop)) return std::nullopt;
  GridHomotopy h;
  h.theta = loop.theta();
  std::vector<Vertex> row = loop.points();
  h.rows.push_back(row);
  for (;;) {
    // Blocks of equal consecutive values.
    std::vector<std::pair<std::size_t, std::size_t>> blocks;  // [start, end)
    for (std::size_t i = 0; i < row.size();) {
      std::size_t j = i;
      while (j < row.size() && row[j] == row[i]) ++j;
      blocks.emplace_back(i, j);
      i = j;
    }
    if (blocks.size() == 1) break;
    bool moved = false;
    for (std::size_t b = 1; b + 1 < blocks.size(); ++b) {
      const Vertex left = row[blocks[b - 1].first];
      if (left != row[blocks[b + 1].first]) continue;
      for (std::size_t i = blocks[b].first; i < blocks[b].second; ++i) row[i] = left;
      h.rows.push_back(row);
      moved = true;
      break;
    }
    if (!moved) return std::nullopt;
  }
  return h;
}

Verdict decide_loop(const ThetaPath& loop, const Budget& budget, const DeciderOptions& options) {
  require(loop.closed(), "decider: path is not closed");
  if (auto bad = validate(loop)) fail("decider: not a theta-path at step " + std::to_string(bad->index));
  const auto start = delazify(loop.points());
  if (start.size() == 1) return trivial(GridHomotopy{loop.theta(), {loop.points()}, true}, "constant");

  if (auto h = backtrack_contraction(loop)) {
    const FiniteMetricSpace& space = *loop.space();
    return trivial(minimize_certificate(space, std::move(*h)), "backtrack reduction");
  }

  if (options.use_presentation) {
    const ScaleComplex complex(loop.space(), loop.theta(), loop.front(), options.presentation);
    const Word word = complex.word_of_loop(loop);
    auto cls = complex.abelian().coordinates(word);
    if (!is_zero_class(cls)) {
      Verdict v;
      v.outcome = Outcome::nontrivial;
      v.obstruction = Obstruction{Obstruction::Kind::h1_class, std::move(cls), {}, "nonzero class in H1"};
      v.method = "abelian obstruction";
      return v;
    }
    const TietzeResult t = tietze_simplify(complex.presentation(), options.tietze_effort);
    if (t.presentation.relators.empty()) {
      Word mapped = t.map_word(word);
      if (!mapped.empty()) {
        Verdict v;
        v.outcome = Outcome::nontrivial;
        v.obstruction = Obstruction{Obstruction::Kind::free_word, {}, std::move(mapped), "nonempty reduced word in a free group"};
        v.method = "free group obstruction";
        return v;
      }
    }
  }

  Budget b = budget;
  if (b.max_width == 0) b.max_width = 2 * loop.size() + 4;
  const ThetaGraph graph = ThetaGraph::build(loop.space(), loop.theta());
  Search search(graph, b);
  SearchStats stats;
  const auto goal = search.run(start, stats);
  stats.states = search.nodes().size();
  if (!goal) {
    Verdict v;
    v.outcome = Outcome::unknown;
    v.stats = stats;
    v.method = stats.budget_exhausted ? "search budget exhausted" : "search space exhausted within width";
    return v;
  }
  GridHomotopy h = certificate_from_search(search.nodes(), *goal, loop.theta());
  return trivial(minimize_certificate(*loop.space(), std::move(h)), "search", stats);
}

Verdict is_nullhomotopic(const ThetaPath& loop, const Budget& budget, const DeciderOptions& options) {
  require(loop.closed(), "is_nullhomotopic: path is not closed");
  require(loop.front() == loop.space()->basepoint(), "is_nullhomotopic: loop is not based at the basepoint");
  return decide_loop(loop, budget, options);
}

Verdict are_homotopic(const ThetaPath& p, const ThetaPath& q, const Budget& budget, const DeciderOptions& options) {
  require(p.theta() == q.theta(), "are_homotopic: paths have different scales");
  require(p.front() == q.front() && p.back() == q.back(), "are_homotopic: paths have different endpoints");
  const ThetaPath loop = concat(p, invert(q));
  Verdict v = decide_loop(loop, budget, options);
  if (v.outcome != Outcome::trivial) return v;

  // Splice: cut every row of the null-homotopy at the column of the p/q junction.
  const GridHomotopy& h = *v.certificate;
  const std::size_t junction_block = delazify(p.points()).size() - 1;
  const auto& first = h.rows.front();
  std::size_t c = 0, block = 0;
  for (std::size_t i = 1; i < first.size() && block < junction_block; ++i)
    if (first[i] != first[i - 1]) {
      ++block;
      c = i;
    }
  ensure(block == junction_block, "splice: junction not found in the certificate");

  const std::size_t M = h.rows.size() - 1;
  const std::size_t width_r = first.size() - c;
  const std::size_t half = std::max(c + 1, width_r);
  auto column = [&](std::size_t j) { return h.rows[j][c]; };
  auto row_for = [&](std::vector<Vertex> part, std::size_t j) {
    std::vector<Vertex> row(half - part.size(), part.front());
    row.insert(row.end(), part.begin(), part.end());
    for (std::size_t t = 1; t <= M; ++t) row.push_back(column(j >= t ? j - t : 0));
    return row;
  };
  GridHomotopy out;
  out.theta = h.theta;
  for (std::size_t j = 0; j <= M; ++j)
    out.rows.push_back(row_for(std::vector<Vertex>(h.rows[j].begin(), h.rows[j].begin() + static_cast<std::ptrdiff_t>(c) + 1), j));
  for (std::size_t j = M + 1; j-- > 0;) {
    std::vector<Vertex> right(h.rows[j].begin() + static_cast<std::ptrdiff_t>(c), h.rows[j].end());
    std::reverse(right.begin(), right.end());
    auto row = row_for(std::move(right), j);
    if (out.rows.back() != row) out.rows.push_back(std::move(row));
  }
  v.certificate = minimize_certificate(*p.space(), std::move(out));
  v.method += ", spliced";
  return v;
}

bool check_obstruction(const Obstruction& o, const ThetaPath& loop, const DeciderOptions& options) {
  const ScaleComplex complex(loop.space(), loop.theta(), loop.front(), options.presentation);
  const Word word = complex.word_of_loop(loop);
  if (o.kind == Obstruction::Kind::h1_class) {
    const auto cls = complex.abelian().coordinates(word);
    return cls == o.h1_class && !is_zero_class(cls);
  }
  const TietzeResult t = tietze_simplify(complex.presentation(), options.tietze_effort);
  return t.presentation.relators.empty() && !o.word.empty() && t.map_word(word) == o.word;
}

}  // namespace thetapi
