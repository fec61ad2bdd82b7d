/**
 * The direct system of scale maps on H1: induced maps between two scales,
 * composition, sweeps over a scale grid, rational barcodes and inverse-limit
 * reports for a finite tower.
 */
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "thetapi/presentation.hpp"
#include "thetapi/smith.hpp"

namespace thetapi {

/// Homomorphism H1(theta_from) -> H1(theta_to) for theta_from <= theta_to.
struct ScaleMap {
  double theta_from = 0.0;
  double theta_to = 0.0;
  std::vector<mpz_class> moduli_from;  // coordinate types of the source (0 = free)
  std::vector<mpz_class> moduli_to;
  /// dim(to) x dim(from); column k is the image of source basis class k.
  IntMatrix matrix;
  /// Image of each source generator as a word in target generators.
  std::vector<Word> images;
};

ScaleMap induced_map(const ScaleComplex& from, const ScaleComplex& to);
ScaleMap induced_map(const SpaceRef& space, double theta_from, double theta_to, Vertex basepoint,
                     const PresentationOptions& options = {});

/// m2 after m1; needs m1.theta_to == m2.theta_from.
ScaleMap compose(const ScaleMap& m1, const ScaleMap& m2);

/// Target coordinates of the image of source coordinates `v`.
std::vector<mpz_class> apply(const ScaleMap& m, const std::vector<mpz_class>& v);

/// Rank over Q (torsion coordinates contribute nothing).
std::size_t rational_rank(const ScaleMap& m);

struct SweepOptions {
  PresentationOptions presentation{true, false, true};
  /// Worker threads for the per-scale presentations; results do not depend on it.
  unsigned threads = 1;
};

/// Midpoints between consecutive critical scales plus one value above the diameter.
std::vector<double> critical_sweep_scales(const FiniteMetricSpace& space);

struct ScaleTower {
  std::vector<double> scales;  // strictly decreasing
  Vertex basepoint = 0;
  std::string space_hash;
  std::vector<std::shared_ptr<const ScaleComplex>> complexes;
  /// maps[i] goes from scales[i + 1] up to scales[i].
  std::vector<ScaleMap> maps;

  std::size_t size() const { return scales.size(); }
  const AbelianInvariants& invariants(std::size_t i) const { return complexes[i]->abelian().invariants(); }
  /// Composite matrix from scales[from] up to scales[to] (from >= to); words are not composed.
  ScaleMap between(std::size_t from, std::size_t to) const;
};

ScaleTower sweep(const SpaceRef& space, std::vector<double> scales, Vertex basepoint,
                 const SweepOptions& options = {});

struct Bar {
  double birth;  // smaller scale where the class first appears
  std::optional<double> death;  // first larger swept scale where it is gone; empty if it survives
  std::size_t multiplicity;
};

std::vector<Bar> barcode(const ScaleTower& tower);

/// Number of bars alive at swept scale index i of the tower.
std::size_t bars_covering(const std::vector<Bar>& bars, double theta);

struct ClassWitness {
  std::vector<mpz_class> coordinates;  // H1 coordinates at the witness scale
  Word word;                           // in the generators at that scale
  std::vector<Vertex> loop;            // closed walk realising the class
};

struct ScaleReport {
  double theta = 0.0;
  AbelianInvariants invariants;
  std::size_t image_rank = 0;  // rational rank of the map from the smallest scale
  std::vector<ClassWitness> cokernel;  // classes here, not in the rational image from below
  std::vector<ClassWitness> kernel;    // smallest-scale classes dying here
  /// Rational kernel rank of the adjacent map from the next smaller scale.
  std::optional<std::size_t> adjacent_kernel_rank;
};

struct InverseLimitReport {
  std::string note;
  std::vector<ScaleReport> scales;  // same order as the tower (decreasing)
  /// Largest-scale index i with the smallest-scale map injective into every scales[j], j >= i.
  std::size_t stabilization_index = 0;
  double stabilization_theta = 0.0;
};

InverseLimitReport inverse_limit_report(const ScaleTower& tower);

/// Whether a class at scales[to] lies in the rational image of scales[from].
bool in_rational_image(const ScaleTower& tower, std::size_t from, std::size_t to, const std::vector<mpz_class>& cls);

}  // namespace thetapi
