// Slow, independent reference computations for cross-checking the main
// pipeline on tiny inputs. Nothing here shares code with the fast paths
// beyond the metric space itself.
#pragma once

#include <vector>

#include <gmpxx.h>

#include "thetapi/presentation.hpp"
#include "thetapi/smith.hpp"
#include "thetapi/spaces.hpp"
#include "thetapi/theta_graph.hpp"

namespace thetapi::oracle {

/// Nonzero invariant factors by plain elementary row/column operations, ascending.
std::vector<mpz_class> invariant_factors(const IntMatrix& m);

/// H1 of the basepoint component of the scale graph with every 3- and 4-cycle filled.
AbelianInvariants naive_h1(const FiniteMetricSpace& space, double theta, Vertex basepoint);

/// 3- and 4-cycles by trying every vertex subset and ordering.
ShortCycles short_cycles(const ThetaGraph& graph);

}  // namespace thetapi::oracle
