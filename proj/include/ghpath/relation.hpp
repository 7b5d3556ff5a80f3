#pragma once

#include "ghpath/metric_space.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace ghpath {

// A relation between the point sets of two spaces of sizes m and n, stored as
// its sorted pair list. Pairs are grid cells (i, j); the canonical integer
// encoding is the bitset over the m x n grid with bit (i*n + j) set, so the
// pair list sorted by (i, j) is exactly the encoding's set bits in order.
struct Relation {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  static Relation from_encoding(std::size_t m, std::size_t n, std::uint64_t code);
  std::uint64_t encoding() const; // requires m*n <= 64

  bool operator==(const Relation& other) const = default;
};

Relation identity_relation(std::size_t n);

// Full product relation X x Y.
Relation product_relation(std::size_t m, std::size_t n);

// Both projections surjective?
bool is_correspondence(const Relation& rel);

// dis(rel) = max ||x x'|_X - |y y'|_Y| over pairs of related pairs.
// Requires a non-empty pair list and indices within range.
Rat distortion(const Relation& rel, const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

// Number of correspondences between sets of sizes m and n, by
// inclusion-exclusion over discarded rows and columns (exact at any size).
BigInt count_correspondences(std::size_t m, std::size_t n);

// Calls fn(code) for every correspondence encoding in increasing order.
// Budget: m*n <= 30 bits by default. fn returning false stops the scan.
struct EnumerationOptions {
  std::size_t bit_budget = 30;
};
void for_each_correspondence(std::size_t m, std::size_t n,
                             const std::function<bool(std::uint64_t)>& fn,
                             const EnumerationOptions& opts = {});

// Removes pairs that are redundant for surjectivity while never increasing
// distortion (dropping a pair can only shrink the pair set), preferring to
// keep the least encoding. The result is a correspondence with at most
// m + n - 1 pairs whose distortion is <= the input's.
Relation prune_redundant_pairs(const Relation& rel);

} // namespace ghpath
