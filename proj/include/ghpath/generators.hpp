#pragma once

#include "ghpath/metric_space.hpp"

#include <cstdint>

namespace ghpath {

struct RandomSpaceOptions {
  // Base distances are drawn as numerator/denominator with numerators in
  // [denominator, 2*denominator]: the [1, 2] range makes every table a
  // metric outright, distinctness does the rest.
  std::uint64_t denominator = 1000;
  std::size_t max_retries = 10000;
};

// Seeded space with pairwise distinct distances, all shifted up by eps.
// Distinctness forces every non-identity self-bijection to move some pair,
// so e > 0; the shift pushes every triangle slack to at least eps. n >= 3.
FiniteMetricSpace gen_distinct_random(std::size_t n, std::uint64_t seed, const Rat& eps,
                                      const RandomSpaceOptions& opts = {});

// Graph metric of the ordered-set gadget: start from the transitive
// tournament on x0 < ... < x_{n-1}, replace each oriented edge e = (x, y) by
// fresh vertices u, v, w and edges x-u, u-v, v-y, v-w, then set adjacent
// distance 1 and non-adjacent 1 + eps. Size n + 3*n*(n-1)/2. Requires
// n >= 2 and 0 < eps < 1.
FiniteMetricSpace gen_wellorder_graph(std::size_t n, const Rat& eps);

// Points x_0..x_{n-1} with d(x_i, x_j) = |q^i - q^j| + 1; n >= 3, q > 4.
FiniteMetricSpace gen_geometric_progression(std::size_t n, const Rat& q);

// X plus one new point at distance f > diam X from everything. Keeps s,
// keeps genericity (re-verified when the result fits the permutation
// budget).
FiniteMetricSpace extend_one_point(const FiniteMetricSpace& X, const Rat& f);

// Certified members of the radius-r sphere around a generic center M with
// 0 < r < min(s/4, e/4, t/6), one per way the witness distortion can be
// attained:
//   split    one center point doubled, the twin pair at distance 2r;
//   excess   every distance shifted up by 2r;
//   deficit  every distance shifted down by 2r.
// The block correspondence has distortion exactly 2r, which pins
// gh(M, X) = r; re-verified by a full search when both sizes are <= 5.
enum class SpherePointMode { split, excess, deficit };

FiniteMetricSpace gen_sphere_point(const FiniteMetricSpace& M, const Rat& r, SpherePointMode mode,
                                   std::uint64_t seed = 0);

} // namespace ghpath
