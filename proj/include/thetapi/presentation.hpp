/**
 * Presentations of the discrete fundamental group at a scale: one generator
 * per non-tree edge of the basepoint component, one relator per 3- or
 * 4-cycle. Abelian invariants and H1 coordinates come from Smith normal form.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "thetapi/paths.hpp"
#include "thetapi/smith.hpp"
#include "thetapi/theta_graph.hpp"
#include "thetapi/words.hpp"

namespace thetapi {

struct PresentationOptions {
  /// Retract dominated vertices first. Same group, far fewer cycles on dense graphs.
  bool collapse_dominated = false;
  /// Skip 4-cycles that have a chord; those are products of two triangles.
  bool chordless_squares_only = false;
  /// Drop generators proven trivial by triangles and 4-cycles whose other
  /// edges are already trivial (tree edges to start with). Same group; only
  /// cycles through two or more surviving edges are enumerated.
  bool prune_trivial_edges = false;
};

struct GroupPresentation {
  /// Generator i is the non-tree edge generators[i], oriented first -> second.
  /// After pruning only the surviving non-tree edges are listed.
  std::vector<Edge> generators;
  std::vector<Word> relators;

  double theta = 0.0;
  std::string space_hash;
  Vertex basepoint = 0;
  std::string tree;  // description of the spanning tree rule
  std::vector<std::string> warnings;
  /// Components of the scale graph not containing the basepoint.
  std::vector<std::vector<Vertex>> other_components;

  /// Non-tree edge k (in spanning order) -> generator index, or -1 if pruned
  /// as trivial. Empty when nothing was pruned.
  std::vector<long> reduced_index;

  /// Abstract presentations (no graph behind them) set the count directly.
  std::optional<std::size_t> generator_count_override;

  std::size_t generator_count() const { return generator_count_override ? *generator_count_override : generators.size(); }

  static GroupPresentation abstract(std::size_t n_generators, std::vector<Word> relators);
  /// Checks letter ranges and free reduction; throws ValidationError.
  void validate() const;
  std::size_t total_relator_length() const;
};

struct AbelianInvariants {
  std::size_t rank = 0;
  std::vector<long long> torsion;  // d_1 | d_2 | .., each >= 2

  bool operator==(const AbelianInvariants&) const = default;
  std::string to_string() const;  // "Z^2 + Z/2 + Z/4"
};

/**
 * Canonical coordinates on H1 = Z^n / (relator lattice). Coordinates are
 * ordered torsion first (value reduced into [0, d)), then free. Unit pivots
 * are eliminated sparsely before a dense Smith form on what remains.
 */
class AbelianCoordinates {
 public:
  explicit AbelianCoordinates(const GroupPresentation& p);

  const AbelianInvariants& invariants() const { return invariants_; }
  std::size_t dimension() const { return moduli_.size(); }
  /// d for a torsion coordinate, 0 for a free one.
  const std::vector<mpz_class>& moduli() const { return moduli_; }
  std::size_t generator_count() const { return n_; }

  std::vector<mpz_class> coordinates(const std::vector<mpz_class>& exponents) const;
  std::vector<mpz_class> coordinates(const Word& w) const;
  /// Exponent vector (over the presentation generators) of the basis class of coordinate i.
  const std::vector<mpz_class>& representative(std::size_t i) const { return representatives_[i]; }
  /// The same class as a word.
  Word representative_word(std::size_t i) const;

 private:
  struct Substitution {
    std::size_t column;
    long long sign;
    std::vector<std::pair<std::size_t, long long>> row;
  };

  std::size_t n_ = 0;
  std::vector<Substitution> substitutions_;
  std::vector<std::size_t> active_;    // live columns entering the dense Smith form
  std::vector<std::size_t> inactive_;  // live columns absent from every residual relator
  IntMatrix v_;                        // Smith V restricted to active columns
  std::size_t skip_ = 0;               // leading unit invariant factors
  std::vector<mpz_class> moduli_;
  std::vector<std::vector<mpz_class>> representatives_;
  AbelianInvariants invariants_;
};

AbelianInvariants abelianization(const GroupPresentation& p);

/// Relator exponent matrix: rows relators, columns generators.
IntMatrix exponent_matrix(const GroupPresentation& p);

/**
 * Everything computed at one scale: the full scale graph, the graph the
 * presentation is built on (after optional collapse) with the retraction
 * onto it, spanning data, presentation and H1 coordinates.
 */
class ScaleComplex {
 public:
  ScaleComplex(SpaceRef space, double theta, Vertex basepoint, const PresentationOptions& options = {});

  const SpaceRef& space() const { return graph_.space(); }
  double theta() const { return graph_.theta(); }
  Vertex basepoint() const { return spanning_.root(); }
  const PresentationOptions& options() const { return options_; }
  const ThetaGraph& graph() const { return graph_; }
  const ThetaGraph& working_graph() const { return working_; }
  const std::vector<Vertex>& retraction() const { return retraction_; }
  const SpanningData& spanning() const { return spanning_; }
  const GroupPresentation& presentation() const { return presentation_; }
  const AbelianCoordinates& abelian() const { return abelian_; }

  bool in_component(Vertex v) const { return full_component_[v]; }
  /// Word of a walk in the full scale graph (walk need not be closed).
  Word word_of_walk(const std::vector<Vertex>& walk) const;
  /// Word of a closed theta-path based at the basepoint; checks scale and space.
  Word word_of_loop(const ThetaPath& loop) const;
  std::vector<mpz_class> class_of(const ThetaPath& loop) const;
  /// Closed walk (in the working graph) realising generator i.
  std::vector<Vertex> generator_loop(std::size_t i) const;
  /// Closed walk in the working graph whose word is w.
  std::vector<Vertex> loop_of_word(const Word& w) const;

 private:
  PresentationOptions options_;
  ThetaGraph graph_;
  std::vector<Vertex> retraction_;  // filled while building working_
  ThetaGraph working_;
  std::vector<bool> full_component_;
  SpanningData spanning_;
  GroupPresentation presentation_;
  AbelianCoordinates abelian_;
};

GroupPresentation presentation_at_scale(const SpaceRef& space, double theta, Vertex basepoint,
                                        const PresentationOptions& options = {});

/// Presentation read off a given graph and spanning data.
GroupPresentation presentation_of_graph(const ThetaGraph& graph, const SpanningData& spanning,
                                        bool chordless_squares_only = false);

/// Same group with generators proven trivial removed; see PresentationOptions.
GroupPresentation pruned_presentation_of_graph(const ThetaGraph& graph, const SpanningData& spanning,
                                               bool chordless_squares_only = false);

/// Rewrites a word over all non-tree edges into the generators of `p`.
Word reduce_word(const GroupPresentation& p, const Word& full);

/// H1 coordinates of a based loop; recomputes the coordinates from scratch.
std::vector<mpz_class> class_of_loop(const ThetaPath& path, const GroupPresentation& p, const SpanningData& s);

bool is_zero_class(const std::vector<mpz_class>& c);

// ---------------------------------------------------------------------------
// Tietze simplification
// ---------------------------------------------------------------------------

struct TietzeResult {
  GroupPresentation presentation;
  /// Original generator g maps to new generator new_index[g] (if kept).
  std::vector<std::optional<std::size_t>> new_index;
  /// Eliminations in order: generator and the word (in generators current at the time) it equals.
  std::vector<std::pair<std::size_t, Word>> eliminations;

  /// Image of a word over the original generators in the simplified group.
  Word map_word(const Word& w) const;
};

/**
 * Deterministic simplification. Never increases generator count or total
 * relator length. effort 0: reductions and eliminations; each further level
 * adds a pass of length-reducing relator-on-relator rewrites.
 */
TietzeResult tietze_simplify(const GroupPresentation& p, int effort = 1);

}  // namespace thetapi
