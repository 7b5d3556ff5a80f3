#pragma once

#include "ghpath/metric_space.hpp"

namespace ghpath {

// The three separation characteristics of a finite metric space X, |X| >= 3:
//   s  minimal positive distance,
//   t  minimal triangle slack |xx'| + |x'x''| - |xx''| over ordered triples of
//      pairwise distinct points (zero when some triangle is degenerate),
//   e  minimal distortion of a non-identity self-bijection.
// X is generic iff all three are positive.
struct SpaceCharacteristics {
  Rat s;
  Rat t;
  Rat e;
  bool generic = false;
};

struct CharacteristicsOptions {
  // e is found by scanning all n! permutations; refuse larger spaces.
  std::size_t permutation_budget = 8;
};

SpaceCharacteristics characteristics(const FiniteMetricSpace& X,
                                     const CharacteristicsOptions& opts = {});

// Distortion of the self-bijection i -> perm[i]: max ||x x'| - |f(x) f(x')||.
Rat permutation_distortion(const FiniteMetricSpace& X, const std::vector<std::size_t>& perm);

// The s and t characteristics alone — cheap, no permutation budget involved.
Rat min_positive_distance(const FiniteMetricSpace& X); // needs >= 2 points
Rat min_triangle_slack(const FiniteMetricSpace& X);    // needs >= 3 points

} // namespace ghpath
