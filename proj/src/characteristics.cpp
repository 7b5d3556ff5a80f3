#include "ghpath/characteristics.hpp"

#include "ghpath/errors.hpp"

#include <algorithm>
#include <numeric>

namespace ghpath {

Rat permutation_distortion(const FiniteMetricSpace& X, const std::vector<std::size_t>& perm) {
  const std::size_t n = X.size();
  if (perm.size() != n) fail_precondition("permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (std::size_t v : perm) {
    if (v >= n || seen[v]) fail_precondition("permutation is not a bijection");
    seen[v] = true;
  }
  Rat worst = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      worst = max(worst, abs(X.d(i, j) - X.d(perm[i], perm[j])));
  return worst;
}

Rat min_positive_distance(const FiniteMetricSpace& X) {
  const std::size_t n = X.size();
  if (n < 2) fail_precondition("min_positive_distance needs at least 2 points");
  Rat s = X.d(0, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s = min(s, X.d(i, j));
  return s;
}

Rat min_triangle_slack(const FiniteMetricSpace& X) {
  const std::size_t n = X.size();
  if (n < 3) fail_precondition("min_triangle_slack needs at least 3 points");
  // Minimal slack over an unordered triple {a,b,c} is p+q+r - 2*max(p,q,r).
  bool first = true;
  Rat t;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        Rat p = X.d(a, b), q = X.d(b, c), r = X.d(a, c);
        Rat slack = p + q + r - 2 * max(p, max(q, r));
        if (first || slack < t) t = slack;
        first = false;
      }
  return t;
}

SpaceCharacteristics characteristics(const FiniteMetricSpace& X,
                                     const CharacteristicsOptions& opts) {
  const std::size_t n = X.size();
  if (n < 3) fail_precondition("characteristics need at least 3 points");
  if (n > opts.permutation_budget)
    fail_budget("characteristics: " + std::to_string(n) + " points exceed permutation budget " +
                std::to_string(opts.permutation_budget));

  SpaceCharacteristics out;
  out.s = min_positive_distance(X);
  out.t = min_triangle_slack(X);

  // e: scan all non-identity permutations, abandoning a permutation as soon as
  // its running max reaches the best found so far.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  bool have_e = false;
  while (std::next_permutation(perm.begin(), perm.end())) {
    Rat worst = 0;
    bool pruned = false;
    for (std::size_t i = 0; i < n && !pruned; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        worst = max(worst, abs(X.d(i, j) - X.d(perm[i], perm[j])));
        if (have_e && worst >= out.e) {
          pruned = true;
          break;
        }
      }
    if (!pruned && (!have_e || worst < out.e)) {
      out.e = worst;
      have_e = true;
      if (out.e == 0) break;
    }
  }

  out.generic = out.s > 0 && out.t > 0 && out.e > 0;
  return out;
}

} // namespace ghpath
