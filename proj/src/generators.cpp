#include "ghpath/generators.hpp"

#include "ghpath/characteristics.hpp"
#include "ghpath/curves.hpp"
#include "ghpath/errors.hpp"
#include "ghpath/gh.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace ghpath {

FiniteMetricSpace gen_distinct_random(std::size_t n, std::uint64_t seed, const Rat& eps,
                                      const RandomSpaceOptions& opts) {
  if (n < 3) fail_precondition("random generic spaces need at least 3 points");
  if (eps <= 0) fail_precondition("the shift must be positive");
  const std::size_t pairs = n * (n - 1) / 2;
  if (pairs > opts.denominator + 1)
    fail_precondition("too many pairs for distinct numerators in [denominator, 2*denominator]");

  // Raw engine outputs reduced by modulo keep the draw sequence identical
  // across standard library implementations.
  std::mt19937_64 eng(seed);
  const std::uint64_t span = opts.denominator + 1;
  std::set<std::uint64_t> used;
  std::vector<Rat> offsets;
  offsets.reserve(pairs);
  std::size_t attempts = 0;
  while (offsets.size() < pairs) {
    if (++attempts > opts.max_retries)
      fail_verification("random draw failed to produce distinct distances within the retry cap");
    std::uint64_t numerator = opts.denominator + eng() % span;
    if (!used.insert(numerator).second) continue; // collision: redraw
    offsets.push_back(Rat(numerator, opts.denominator) + eps);
  }

  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  std::vector<Rat> d(n * n, Rat(0));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = offsets[k];
      d[j * n + i] = offsets[k];
      ++k;
    }
  // Base values lie in [1, 2] and are pairwise distinct, so every triangle
  // slack is positive before the shift and grows by eps with it.
  return validate_metric(std::move(labels), std::move(d));
}

FiniteMetricSpace gen_wellorder_graph(std::size_t n, const Rat& eps) {
  if (n < 2) fail_precondition("the graph gadget needs at least 2 base points");
  if (!(eps > 0 && eps < 1)) fail_precondition("eps must lie strictly between 0 and 1");

  std::vector<std::string> labels;
  labels.reserve(n + 3 * n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> edges; // adjacency to fill
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::string suffix = std::to_string(i) + "_" + std::to_string(j);
      std::size_t u = labels.size();
      labels.push_back("u" + suffix);
      labels.push_back("v" + suffix);
      labels.push_back("w" + suffix);
      edges.push_back({i, u});         // x_i - u
      edges.push_back({u, u + 1});     // u - v
      edges.push_back({u + 1, j});     // v - x_j
      edges.push_back({u + 1, u + 2}); // v - w
    }

  const std::size_t N = labels.size();
  std::vector<Rat> d(N * N, 1 + eps);
  for (std::size_t i = 0; i < N; ++i) d[i * N + i] = 0;
  for (auto [a, b] : edges) {
    d[a * N + b] = 1;
    d[b * N + a] = 1;
  }
  return validate_metric(std::move(labels), std::move(d));
}

FiniteMetricSpace gen_geometric_progression(std::size_t n, const Rat& q) {
  if (n < 3) fail_precondition("the progression space needs at least 3 points");
  if (!(q > 4)) fail_precondition("the ratio must exceed 4, got " + to_string(q));

  std::vector<Rat> powers(n);
  powers[0] = 1;
  for (std::size_t i = 1; i < n; ++i) powers[i] = powers[i - 1] * q;

  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  std::vector<Rat> d(n * n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rat v = abs(powers[i] - powers[j]) + 1;
      d[i * n + j] = v;
      d[j * n + i] = std::move(v);
    }
  return validate_metric(std::move(labels), std::move(d));
}

FiniteMetricSpace extend_one_point(const FiniteMetricSpace& X, const Rat& f) {
  SpaceCharacteristics ch = characteristics(X);
  if (!ch.generic)
    fail_precondition("the base space must be generic: s = " + to_string(ch.s) + ", t = " +
                      to_string(ch.t) + ", e = " + to_string(ch.e));
  if (!(f > X.diameter()))
    fail_precondition("the new distance " + to_string(f) + " must exceed the diameter " +
                      to_string(X.diameter()));

  std::vector<std::string> labels = X.labels();
  std::string fresh = "y";
  while (std::find(labels.begin(), labels.end(), fresh) != labels.end()) fresh += "'";
  labels.push_back(fresh);

  const std::size_t n = X.size();
  std::vector<Rat> d((n + 1) * (n + 1), Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * (n + 1) + j] = X.d(i, j);
  for (std::size_t i = 0; i < n; ++i) {
    d[i * (n + 1) + n] = f;
    d[n * (n + 1) + i] = f;
  }
  FiniteMetricSpace Y = validate_metric(std::move(labels), std::move(d));

  CharacteristicsOptions copts;
  if (Y.size() <= copts.permutation_budget) {
    // Guaranteed: s stays, slacks stay positive, and any bijection moving the
    // new point distorts by at least f - diam. Re-check rather than assume.
    if (!characteristics(Y).generic)
      fail_verification("extension lost genericity, which the construction rules out");
  }
  return Y;
}

FiniteMetricSpace gen_sphere_point(const FiniteMetricSpace& M, const Rat& r, SpherePointMode mode,
                                   std::uint64_t seed) {
  SpaceCharacteristics ch = characteristics(M);
  if (!ch.generic)
    fail_precondition("the center must be generic: s = " + to_string(ch.s) + ", t = " +
                      to_string(ch.t) + ", e = " + to_string(ch.e));
  Rat bound = min(min(ch.s / 4, ch.e / 4), ch.t / 6);
  if (!(r > 0 && r < bound))
    fail_precondition("radius " + to_string(r) + " is outside (0, min(s/4, e/4, t/6)) = (0, " +
                      to_string(bound) + ")");

  const std::size_t n = M.size();
  FiniteMetricSpace X = delta1(); // placeholder, reassigned below
  Relation block; // correspondence whose distortion must be exactly 2r
  switch (mode) {
  case SpherePointMode::excess:
    X = sign_space(M, all_signs(n, +1), r);
    block = identity_relation(n);
    break;
  case SpherePointMode::deficit:
    X = sign_space(M, all_signs(n, -1), r);
    block = identity_relation(n);
    break;
  case SpherePointMode::split: {
    const std::size_t split = seed % n;
    std::vector<std::string> labels = M.labels();
    std::string a = labels[split] + "a";
    std::string b = labels[split] + "b";
    while (std::find(labels.begin(), labels.end(), a) != labels.end()) a += "'";
    labels[split] = a;
    while (std::find(labels.begin(), labels.end(), b) != labels.end()) b += "'";
    labels.push_back(b);

    // Twin copies of the split point at mutual distance 2r; everything else
    // keeps its distance to both copies.
    const std::size_t N = n + 1;
    std::vector<Rat> d(N * N, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * N + j] = M.d(i, j);
    for (std::size_t i = 0; i < n; ++i) {
      Rat v = i == split ? 2 * r : M.d(i, split);
      d[i * N + n] = v;
      d[n * N + i] = std::move(v);
    }
    X = validate_metric(std::move(labels), std::move(d));

    block.m = n;
    block.n = N;
    for (std::size_t i = 0; i < n; ++i) block.pairs.push_back({i, i});
    block.pairs.push_back({split, n});
    std::sort(block.pairs.begin(), block.pairs.end());
    break;
  }
  }

  if (distortion(block, M, X) != 2 * r)
    fail_verification("constructed witness distortion is not exactly twice the radius");
  if (M.size() <= 5 && X.size() <= 5) {
    if (gh_exact(M, X).value != r)
      fail_verification("full search disagrees with the constructed membership");
  }
  return X;
}

} // namespace ghpath
