/**
 * Bounded decision procedure for theta-homotopy of theta-paths. Trivial
 * verdicts carry a grid homotopy, NonTrivial verdicts a recomputable
 * obstruction; everything else is Unknown.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "thetapi/paths.hpp"
#include "thetapi/presentation.hpp"

namespace thetapi {

struct Budget {
  /// Longest row the search may create; 0 means 2 * input length + 4.
  std::size_t max_width = 0;
  std::size_t max_states = 1'000'000;
};

enum class Outcome { trivial, nontrivial, unknown };

std::string to_string(Outcome o);

struct Obstruction {
  enum class Kind { h1_class, free_word };
  Kind kind = Kind::h1_class;
  std::vector<mpz_class> h1_class;  // nonzero coordinates
  Word word;                         // nonempty word in a free presentation
  std::string description;
};

struct SearchStats {
  std::size_t states = 0;
  std::size_t max_width = 0;
  bool budget_exhausted = false;
};

struct Verdict {
  Outcome outcome = Outcome::unknown;
  std::optional<GridHomotopy> certificate;
  std::optional<Obstruction> obstruction;
  SearchStats stats;
  std::string method;  // which phase decided
};

struct DeciderOptions {
  /// Phases 1-2 (abelian and free-word obstructions, backtrack reduction).
  /// Off means certificate search only.
  bool use_presentation = true;
  PresentationOptions presentation{true, false, true};
  int tietze_effort = 1;
};

/// Loop must be closed and based at the space's basepoint.
Verdict is_nullhomotopic(const ThetaPath& loop, const Budget& budget = {}, const DeciderOptions& options = {});

/// Same as is_nullhomotopic but for a loop based anywhere.
Verdict decide_loop(const ThetaPath& loop, const Budget& budget = {}, const DeciderOptions& options = {});

/// p ~ q rel endpoints; a Trivial certificate goes from p to q.
Verdict are_homotopic(const ThetaPath& p, const ThetaPath& q, const Budget& budget = {},
                      const DeciderOptions& options = {});

/**
 * Contracts a loop by repeatedly removing backtracks (z, y, z) -> (z).
 * Returns the grid homotopy to the constant loop if that succeeds.
 */
std::optional<GridHomotopy> backtrack_contraction(const ThetaPath& loop);

/// Recomputes an obstruction against the loop; true iff it still certifies non-triviality.
bool check_obstruction(const Obstruction& o, const ThetaPath& loop, const DeciderOptions& options = {});

}  // namespace thetapi
